"""Direct numerical counting of singularities of explicit polynomial maps."""

from .critical import ComplexPoly, critical_points_in_disk, morse_signed_count, pixel_euler_characteristic, winding_count
from .crosscaps import cross_caps_complex, cross_caps_real
from .curves import dense_double_points, planar_double_points, verify_herbert_planar
from .folds import PlaneMap, boundary_rotation, detect_folds_cusps, induced_frame_rotation
from .presets import MapPreset, PresetError, all_presets, get_preset
from .report import SingularityReport, SingularPoint, SolverError

__all__ = [
    "ComplexPoly", "MapPreset", "PlaneMap", "PresetError", "SingularPoint", "SingularityReport", "SolverError",
    "all_presets", "boundary_rotation", "critical_points_in_disk", "cross_caps_complex", "cross_caps_real",
    "dense_double_points", "detect_folds_cusps", "get_preset", "induced_frame_rotation", "morse_signed_count",
    "pixel_euler_characteristic", "planar_double_points", "verify_herbert_planar", "winding_count",
]
