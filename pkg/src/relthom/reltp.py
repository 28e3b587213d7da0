"""Relative Thom polynomial predictions and the correction-term ledger.

A prediction for a framed prescribed boundary map and one extension of it is

    count = Tp(eta) evaluated on relative characteristic numbers
            + correction row evaluated on boundary invariants.

Relative characteristic numbers and boundary invariants are inputs; nothing
here computes them from geometry.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Mapping, Optional, Sequence, Union

from . import catalog
from .catalog import SingTypeId, default_a_k
from .graded import GradedPoly, evaluate_numbers, mono_degree, parse_monomial
from .rings import INT, Element, IntegralityError, RingTag, convert


class ProfileError(ValueError):
    """A profile violates its schema."""


class ParityError(ArithmeticError):
    """An expression that must be even (or divisible) is not: inconsistent inputs."""


# -- profiles ---------------------------------------------------------------------


@dataclass(frozen=True)
class PrescribedProfile:
    """Invariants of framed prescribed data along the boundary V."""

    m: int
    n: int
    category: str
    boundary_name: str = "V"
    boundary_kind: str = "Any"
    euler_boundary: int = 0
    tau: int = 0
    invariants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "category", catalog.normalize_category(self.category))
        object.__setattr__(self, "boundary_kind", catalog.normalize_boundary(self.boundary_kind))
        if self.m < 1 or self.n < 1:
            raise ProfileError("dimensions must be positive")
        if self.tau < 0:
            raise ProfileError("tau is a dimension and cannot be negative")
        inv = dict(self.invariants)
        for name, value in inv.items():
            if name == "tau":
                raise ProfileError("tau is a profile field, not an invariant entry")
            if not catalog.is_invariant_name(name):
                raise ProfileError(f"unknown boundary invariant {name!r}")
            if isinstance(value, bool) or not isinstance(value, int):
                raise ProfileError(f"invariant {name} must be an integer")
        if "mu" in inv and not 0 <= inv["mu"] < 16:
            raise ProfileError("mu must lie in [0, 16)")
        if "T" in inv and not 0 <= inv["T"] < 24:
            raise ProfileError("T must lie in [0, 24)")
        object.__setattr__(self, "invariants", inv)

    def invariant_table(self) -> Dict[str, int]:
        table = dict(self.invariants)
        table["tau"] = self.tau
        return table


@dataclass(frozen=True)
class ExtensionProfile:
    """Numbers of one extension M of the prescribed data.

    ``rel_numbers`` maps canonical monomial strings (``"p1"``, ``"w1^2"``,
    ``"c'1"``) to characteristic numbers relative to the boundary frame.
    """

    euler: int = 0
    signature: int = 0
    rel_numbers: Mapping[str, object] = field(default_factory=dict)
    degree_of_map: Optional[int] = None
    ring: Optional[RingTag] = None

    def __post_init__(self):
        object.__setattr__(self, "rel_numbers", {k.replace(" ", ""): v for k, v in self.rel_numbers.items()})

    def check_degrees(self, dim: int) -> None:
        for key in self.rel_numbers:
            try:
                mono = parse_monomial(key, euler_rank=dim)
            except ValueError as exc:
                raise ProfileError(str(exc)) from None
            if mono_degree(mono) != dim:
                raise ProfileError(f"characteristic number {key} has degree {mono_degree(mono)}, expected {dim}")

    def has_target_numbers(self) -> bool:
        return any("'" in k for k in self.rel_numbers)


@dataclass(frozen=True)
class Prediction:
    type_id: SingTypeId
    case: str
    naive: Element
    correction: Element
    total: Element
    ring: RingTag

    def to_dict(self) -> dict:
        return {
            "type": self.type_id.name,
            "category": self.type_id.category,
            "case": self.case,
            "naive": _jsonable(self.naive),
            "correction": _jsonable(self.correction),
            "total": _jsonable(self.total),
            "ring": str(self.ring),
        }


def _jsonable(x):
    return x if isinstance(x, int) else str(x)


def source_dimension(type_id: SingTypeId, m: int) -> int:
    """Real dimension of the source, i.e. the degree of its fundamental class."""
    return 2 * m if type_id.category == "Complex" else m


# -- predictions ------------------------------------------------------------------


def naive_value(type_id: SingTypeId, m: int, n: int, extension: ExtensionProfile,
                full_target: Optional[bool] = None) -> (Element, GradedPoly):
    """The pure substitution part: Tp(eta) paired with [M, dM]."""
    if full_target is None:
        full_target = extension.has_target_numbers()
    tp = catalog.lookup_tp(type_id, m, n, full_target=full_target)
    dim = source_dimension(type_id, m)
    if tp.degrees() - {dim}:
        raise ProfileError(f"{type_id} at ({m}, {n}) has degree {cohomological(type_id, m, n)}, "
                           f"not a point count on a {dim}-manifold")
    extension.check_degrees(dim)
    numbers = extension.rel_numbers
    if extension.ring is not None:
        numbers = {k: convert(extension.ring.coerce(v), extension.ring, tp.ring) for k, v in numbers.items()}
    return evaluate_numbers(tp, dim, numbers), tp


def cohomological(type_id: SingTypeId, m: int, n: int) -> int:
    return catalog.cohomological_degree(type_id, m, n)


def predict_count(type_id: SingTypeId, prescribed: PrescribedProfile, extension: ExtensionProfile,
                  full_target: Optional[bool] = None,
                  a_k: Callable[[int], int] = default_a_k) -> Prediction:
    """Predicted algebraic number of eta-points of any generic extension."""
    if prescribed.category != type_id.category:
        raise ProfileError(f"profile category {prescribed.category} does not match {type_id}")
    m, n = prescribed.m, prescribed.n
    naive, tp = naive_value(type_id, m, n, extension, full_target)
    row = catalog.lookup_correction(type_id, m, n, prescribed.boundary_kind)
    correction = row.evaluate(prescribed.invariant_table(), m, n, a_k)
    ring = row.ring
    naive_in_ring = convert(naive, tp.ring, ring)
    return Prediction(type_id, row.case, naive_in_ring, correction, ring.add(naive_in_ring, correction), ring)


# -- ledger --------------------------------------------------------------------------

IntOrVec = Union[int, Sequence[int]]


def _broadcast(x: IntOrVec, size: int):
    if isinstance(x, int):
        return [x] * size
    if len(x) != size:
        raise ValueError("difference-class vector has the wrong length")
    return list(x)


def frame_change(alpha: IntOrVec, d_source: IntOrVec, d_target: IntOrVec, a_eta: int, b_eta: int) -> list:
    """Correction term after swapping the target frame (Theta -> Xi).

    Returns ``alpha + a_eta * d_source + b_eta * d_target`` componentwise,
    where ``d_source`` is the induced source-frame difference and
    ``d_target`` the target-frame difference.
    """
    vec = [alpha] if isinstance(alpha, int) else list(alpha)
    ds = _broadcast(d_source, len(vec))
    dt = _broadcast(d_target, len(vec))
    return [x + a_eta * s + b_eta * t for x, s, t in zip(vec, ds, dt)]


def map_compare(d_eta: int, d_q: int, a_eta: int) -> int:
    """alpha(eta|phi) - alpha(eta|psi), as a representative integer."""
    return d_eta - a_eta * d_q


def hirzebruch_defect(p1_rel_spin: int, signature: int) -> int:
    return p1_rel_spin - 3 * signature


def saeki_szucs_takase(signature: int, tau: int, a2_count: int) -> int:
    """i_a = 3/2 (sigma - tau) + 1/2 #A2, which must be an integer."""
    num = 3 * (signature - tau) + a2_count
    if num % 2:
        raise ParityError(f"3(sigma - tau) + #A2 = {num} is odd")
    return num // 2


def takase_T(signature: int, mu: int, sigma2_count: int) -> int:
    """T = (3(sigma - mu) + #Sigma2) / 2 mod 24."""
    num = 3 * (signature - mu) + sigma2_count
    if num % 2:
        raise ParityError(f"3(sigma - mu) + #Sigma2 = {num} is odd")
    return (num // 2) % 24


def smale_from_singularities(k: int, p_numbers: Union[int, Mapping[str, object]], a2_count: int,
                             a_k: Callable[[int], int] = default_a_k) -> int:
    """Smale invariant of S^{4k-1} -> R^{4k+1} from a singular Seifert surface.

    ``p_numbers`` is the p1-number when k = 1, or a mapping of degree-4k
    Pontryagin monomials to relative numbers.  The bracket is
    ``#A2 - pbar_k[M]``, matching the count decomposition used by
    :func:`predict_count`.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if isinstance(p_numbers, int):
        if k != 1:
            raise ValueError("a bare p1-number only determines the k = 1 case")
        p_numbers = {"p1": p_numbers}
    type_id = SingTypeId("A2", "RealOriented")
    naive, _ = naive_value(type_id, 4 * k, 6 * k - 1, ExtensionProfile(rel_numbers=p_numbers), False)
    if not naive.is_integer():
        raise IntegralityError(f"naive part {naive} is not an integer")
    bracket = a2_count - int(naive)
    divisor = a_k(k) * math.factorial(2 * k - 1)
    if bracket % divisor:
        raise ParityError(f"{bracket} is not divisible by a_k (2k-1)! = {divisor}")
    return bracket // divisor


# -- profile files -------------------------------------------------------------------------

_TOP_KEYS = {"type", "category", "m", "n", "prescribed", "extension", "full_target"}
_PRESCRIBED_KEYS = {"boundary_name", "boundary_kind", "euler_boundary", "tau", "invariants"}
_EXTENSION_KEYS = {"ring", "euler", "signature", "rel_numbers", "degree_of_map"}


def _reject_unknown(data: Mapping, allowed: set, where: str) -> None:
    if not isinstance(data, Mapping):
        raise ProfileError(f"{where} must be an object")
    unknown = set(data) - allowed
    if unknown:
        raise ProfileError(f"unknown keys in {where}: {sorted(unknown)}")


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProfileError(f"{where} must be an integer")
    return value


def scenario_from_dict(data: Mapping):
    """Validate a profile document and build (type_id, prescribed, extension, full_target)."""
    _reject_unknown(data, _TOP_KEYS, "profile")
    for key in ("type", "category", "m", "n", "prescribed", "extension"):
        if key not in data:
            raise ProfileError(f"profile is missing {key!r}")
    try:
        type_id = SingTypeId.of(data["type"], data["category"])
    except catalog.CatalogMiss as exc:
        raise ProfileError(str(exc)) from None
    m = _require_int(data["m"], "m")
    n = _require_int(data["n"], "n")
    pre = data["prescribed"]
    _reject_unknown(pre, _PRESCRIBED_KEYS, "prescribed")
    invariants = pre.get("invariants", {})
    _reject_unknown(invariants, set(invariants), "invariants")
    try:
        prescribed = PrescribedProfile(
            m=m, n=n, category=type_id.category,
            boundary_name=str(pre.get("boundary_name", "V")),
            boundary_kind=str(pre.get("boundary_kind", "Any")),
            euler_boundary=_require_int(pre.get("euler_boundary", 0), "euler_boundary"),
            tau=_require_int(pre.get("tau", 0), "tau"),
            invariants=dict(invariants),
        )
    except catalog.CatalogMiss as exc:
        raise ProfileError(str(exc)) from None
    ext = data["extension"]
    _reject_unknown(ext, _EXTENSION_KEYS, "extension")
    ring = RingTag.parse(ext["ring"]) if "ring" in ext else None
    rel = ext.get("rel_numbers", {})
    _reject_unknown(rel, set(rel), "rel_numbers")
    for k, v in rel.items():
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ProfileError(f"characteristic number {k} must be an integer or 'a/b' string")
    extension = ExtensionProfile(
        euler=_require_int(ext.get("euler", 0), "euler"),
        signature=_require_int(ext.get("signature", 0), "signature"),
        rel_numbers=dict(rel),
        degree_of_map=ext.get("degree_of_map"),
        ring=ring,
    )
    full_target = data.get("full_target")
    if full_target is not None and not isinstance(full_target, bool):
        raise ProfileError("full_target must be a boolean")
    return type_id, prescribed, extension, full_target


def load_profile(path: Union[str, Path]):
    path = Path(path)
    if not path.exists():
        raise ProfileError(f"profile file {path} does not exist")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ProfileError(f"{path}: invalid JSON ({exc})") from None
    return scenario_from_dict(data)


# -- convenience builders -----------------------------------------------------------------


def riemann_hurwitz_extension(chi_source: int, chi_target: int, degree: int) -> ExtensionProfile:
    """Outward frames: c1[TM|theta] = chi(M), f^*c1[TN|Theta] = deg * chi(N)."""
    return ExtensionProfile(
        euler=chi_source,
        rel_numbers={"c1": chi_source, "c'1": degree * chi_target},
        degree_of_map=degree,
        ring=INT,
    )
