"""Relative Thom polynomials: graded class algebra, catalog, predictions and numeric checks."""

from .catalog import SingTypeId, codimension, lookup_correction, lookup_tp
from .graded import GradedPoly, RelClass, evaluate_numbers, invert_unit
from .reltp import ExtensionProfile, Prediction, PrescribedProfile, predict_count
from .rings import DYADIC, INT, Z2, Dyadic, RingTag, int_mod

__version__ = "0.1.0"

__all__ = [
    "DYADIC", "INT", "Z2", "Dyadic", "ExtensionProfile", "GradedPoly", "Prediction", "PrescribedProfile",
    "RelClass", "RingTag", "SingTypeId", "codimension", "evaluate_numbers", "int_mod", "invert_unit",
    "lookup_correction", "lookup_tp", "predict_count",
]
