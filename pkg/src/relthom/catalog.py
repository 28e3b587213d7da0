"""Singularity types, absolute Thom polynomials and correction-term rows.

Only closed forms are stored; nothing here computes a Thom polynomial from
first principles.  Rows are matched on (type, category, dimension pattern,
boundary kind) and ambiguous matches resolve to the most specific row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .graded import Generator, GradedPoly, dual_class, euler, pont, sw
from .rings import DYADIC, INT, Z2, Element, RingTag, convert, int_mod

TYPES = ("A1", "A2", "Sigma2", "SigmaFR")
CATEGORIES = ("RealUnoriented", "RealOriented", "Complex", "Function")
BOUNDARY_KINDS = ("Sphere", "NullCobordant", "Any")

_TYPE_ALIASES = {
    "a1": "A1", "a2": "A2", "sigma2": "Sigma2", "sigma^2": "Sigma2",
    "sigmafr": "SigmaFR", "sigma_fr": "SigmaFR",
}
_CATEGORY_ALIASES = {
    "realunoriented": "RealUnoriented", "unoriented": "RealUnoriented",
    "realoriented": "RealOriented", "oriented": "RealOriented",
    "complex": "Complex", "function": "Function",
}

# Reserved boundary-invariant names accepted by prescribed profiles.
INVARIANT_NAMES = ("Omega", "Omega_C", "Omega_j", "delta", "mu", "i_a", "T", "rot_boundary", "tau")


class CatalogMiss(LookupError):
    """The requested (type, dimensions, category) is not in the catalog."""


def normalize_type(name: str) -> str:
    key = name.strip().lower()
    if key not in _TYPE_ALIASES:
        raise CatalogMiss(f"unknown singularity type {name!r}")
    return _TYPE_ALIASES[key]


def normalize_category(name: str) -> str:
    key = name.strip().lower().replace("_", "").replace("-", "")
    if key not in _CATEGORY_ALIASES:
        raise CatalogMiss(f"unknown category {name!r}")
    return _CATEGORY_ALIASES[key]


def normalize_boundary(name: str) -> str:
    for kind in BOUNDARY_KINDS:
        if name.strip().lower().replace("-", "").replace("_", "") == kind.lower():
            return kind
    raise CatalogMiss(f"unknown boundary kind {name!r}")


def is_invariant_name(name: str) -> bool:
    if name in INVARIANT_NAMES:
        return True
    return name.startswith("d_") and name[2:].isdigit() and int(name[2:]) >= 1


@dataclass(frozen=True)
class SingTypeId:
    name: str
    category: str

    def __post_init__(self):
        if self.name not in TYPES:
            raise ValueError(f"unknown type {self.name!r}")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")

    @classmethod
    def of(cls, name: str, category: str) -> "SingTypeId":
        return cls(normalize_type(name), normalize_category(category))

    def __str__(self):
        return f"{self.name}[{self.category}]"


def codimension(name: str, m: int, n: int) -> int:
    """Real (or complex) codimension of the type in the jet space J(m, n).

    A_mu: mu(n - m + 1) when m <= n and m - n + mu when m > n.
    Sigma^i: i(|m - n| + i).  Sigma_FR: 8, defined for m = n.
    """
    name = normalize_type(name)
    if m < 1 or n < 1:
        raise ValueError("dimensions must be positive")
    if name in ("A1", "A2"):
        mu = int(name[1])
        if m <= n:
            return mu * (n - m + 1)
        return m - n + mu
    if name == "Sigma2":
        return 2 * (abs(m - n) + 2)
    if m != n:
        raise CatalogMiss("Sigma_FR is only defined for m = n")
    return 8


def cohomological_degree(type_id: SingTypeId, m: int, n: int) -> int:
    """Degree of the Thom polynomial; complex codimension counts twice."""
    q = codimension(type_id.name, m, n)
    return 2 * q if type_id.category == "Complex" else q


def default_a_k(k: int) -> int:
    """The constant a_k of the Smale-invariant row: 2 for odd k, 1 for even k."""
    if k < 1:
        raise ValueError("k must be positive")
    return 2 if k % 2 else 1


# -- dimension patterns -------------------------------------------------------


@dataclass(frozen=True)
class DimsPattern:
    label: str
    predicate: Callable[[int, int], bool]
    specificity: int  # 0 = inequality family, 1 = parametric family, 2 = exact pair

    def matches(self, m: int, n: int) -> bool:
        return m >= 1 and n >= 1 and self.predicate(m, n)


M_LE_N = DimsPattern("m<=n", lambda m, n: m <= n, 0)
M_GE_N = DimsPattern("m>=n", lambda m, n: m >= n, 0)
FUNCTION = DimsPattern("m>=n=1", lambda m, n: n == 1, 1)
PAIR_M_2 = DimsPattern("(m,2), m>=2", lambda m, n: n == 2 and m >= 2, 1)
PAIR_2K_2 = DimsPattern("(2k,2), k>1", lambda m, n: n == 2 and m % 2 == 0 and m > 2, 1)
PAIR_4K_6K1 = DimsPattern("(4k,6k-1), k>=1", lambda m, n: m % 4 == 0 and n == 6 * (m // 4) - 1, 1)


def _exact(m0: int, n0: int) -> DimsPattern:
    return DimsPattern(f"({m0},{n0})", lambda m, n: (m, n) == (m0, n0), 2)


# -- absolute Thom polynomials ----------------------------------------------------


@dataclass(frozen=True)
class ThomEntry:
    key: str
    type_id: SingTypeId
    dims: DimsPattern
    template: str
    ring: RingTag
    builder: Callable[[int, int], GradedPoly]
    full_target: bool = False

    def build(self, m: int, n: int, ring: Optional[RingTag] = None,
              truncation: Optional[int] = None) -> GradedPoly:
        poly = self.builder(m, n)
        if ring is not None and ring != poly.ring:
            poly = GradedPoly(ring, {mono: convert(c, poly.ring, ring) for mono, c in poly.terms.items()})
        return poly.with_truncation(truncation)


def _c(i: int, side: str = "Source") -> GradedPoly:
    return GradedPoly.generator(Generator("Chern", side, i), INT)


THOM_ENTRIES: Tuple[ThomEntry, ...] = (
    ThomEntry("A1-real-m<=n", SingTypeId("A1", "RealUnoriented"), M_LE_N, "wbar_{n-m+1}", Z2,
              lambda m, n: dual_class("SW", n - m + 1, m, Z2)),
    ThomEntry("A1-complex-m<=n", SingTypeId("A1", "Complex"), M_LE_N, "cbar_{n-m+1}", INT,
              lambda m, n: dual_class("Chern", n - m + 1, m, INT)),
    ThomEntry("A1-complex-(1,1)-full", SingTypeId("A1", "Complex"), _exact(1, 1), "-c1 + c'1", INT,
              lambda m, n: -_c(1) + _c(1, "Target"), full_target=True),
    ThomEntry("A2-oriented-(4k,6k-1)", SingTypeId("A2", "RealOriented"), PAIR_4K_6K1, "pbar_k", DYADIC,
              lambda m, n: dual_class("Pontryagin", m // 4, m // 2, DYADIC)),
    ThomEntry("Sigma2-oriented-(4,4)", SingTypeId("Sigma2", "RealOriented"), _exact(4, 4), "-p1", DYADIC,
              lambda m, n: -pont(1)),
    ThomEntry("SigmaFR-oriented-(8,8)", SingTypeId("SigmaFR", "RealOriented"), _exact(8, 8),
              "12*p1^2 - 9*p2", DYADIC, lambda m, n: 12 * pont(1) ** 2 - 9 * pont(2)),
    ThomEntry("A1-real-m>=n", SingTypeId("A1", "RealUnoriented"), M_GE_N, "w_{m-n+1}", Z2,
              lambda m, n: sw(m - n + 1)),
    # e vanishes in Z[1/2] for odd m, but the relative Euler number need not
    ThomEntry("A1-function", SingTypeId("A1", "Function"), FUNCTION, "e", DYADIC,
              lambda m, n: euler(m)),
    ThomEntry("A2-real-(m,2)", SingTypeId("A2", "RealUnoriented"), PAIR_M_2, "w_m", Z2,
              lambda m, n: sw(m)),
)


def _pick(candidates, what: str):
    if not candidates:
        raise CatalogMiss(f"not in catalog: {what}")
    return max(candidates, key=lambda e: e[0])[1]


def find_thom_entry(type_id: SingTypeId, m: int, n: int, full_target: bool = False) -> ThomEntry:
    cands = [
        ((e.dims.specificity, -i), e)
        for i, e in enumerate(THOM_ENTRIES)
        if e.type_id == type_id and e.full_target == full_target and e.dims.matches(m, n)
    ]
    target = "full target classes" if full_target else "target classes set to 0"
    return _pick(cands, f"{type_id} at (m, n) = ({m}, {n}) with {target}")


def lookup_tp(type_id: SingTypeId, m: int, n: int, ring: Optional[RingTag] = None,
              truncation: Optional[int] = None, full_target: bool = False) -> GradedPoly:
    """Absolute Thom polynomial of ``type_id`` in dimensions (m, n)."""
    return find_thom_entry(type_id, m, n, full_target).build(m, n, ring, truncation)


def thom_coefficient(poly: GradedPoly, family: str, index: int, side: str = "Source") -> Element:
    """Coefficient of the single generator ``g_index`` (a(eta) or b(eta))."""
    for mono, c in poly.terms.items():
        if len(mono) == 1 and mono[0][1] == 1:
            g = mono[0][0]
            if g.family == family and g.index == index and g.side == side:
                return c
    return poly.ring.zero()


# -- correction terms ----------------------------------------------------------

SMALE_COEFF = "a_k(2k-1)!"
D_TEMPLATE = "d_{n-m+1}"


@dataclass(frozen=True)
class CorrectionEntry:
    case: str
    type_id: SingTypeId
    dims: DimsPattern
    boundary: str
    ring: RingTag
    formula: Tuple[Tuple[str, object], ...]
    description: str

    def matches_boundary(self, kind: str) -> bool:
        # every prescribed boundary is null-cobordant, so only Sphere restricts
        return self.boundary != "Sphere" or kind == "Sphere"

    def template(self) -> str:
        return render_formula(self.formula)

    def resolve(self, m: int, n: int, a_k: Callable[[int], int] = default_a_k) -> Tuple[Tuple[str, int], ...]:
        """Concrete (invariant name, integer coefficient) pairs in dimensions (m, n)."""
        out = []
        for name, coeff in self.formula:
            if name == D_TEMPLATE:
                name = f"d_{n - m + 1}"
            if coeff == SMALE_COEFF:
                k = m // 4
                coeff = a_k(k) * math.factorial(2 * k - 1)
            out.append((name, int(coeff)))
        return tuple(out)

    def required_names(self, m: int, n: int) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.resolve(m, n))

    def evaluate(self, invariants: Mapping[str, int], m: int, n: int,
                 a_k: Callable[[int], int] = default_a_k) -> Element:
        """Sum in Z, then reduce into the row's ring."""
        total = 0
        for name, coeff in self.resolve(m, n, a_k):
            if name not in invariants:
                raise KeyError(f"correction ({self.case}) needs invariant {name!r}")
            total += coeff * int(invariants[name])
        return self.ring.coerce(total)


def render_formula(formula) -> str:
    if not formula:
        return "0"
    parts = []
    for name, coeff in formula:
        if coeff == 1:
            parts.append(name)
        else:
            parts.append(f"{coeff}*{name}")
    return " + ".join(parts)


_Z24 = int_mod(24)

CORRECTION_ENTRIES: Tuple[CorrectionEntry, ...] = (
    CorrectionEntry("i", SingTypeId("A1", "RealUnoriented"), M_LE_N, "Sphere", Z2, (),
                    "vanishes"),
    CorrectionEntry("ii", SingTypeId("A1", "Complex"), M_LE_N, "Sphere", INT, ((D_TEMPLATE, 2),),
                    "complex Smale invariant"),
    CorrectionEntry("iii", SingTypeId("A1", "RealUnoriented"), M_GE_N, "Any", Z2, (),
                    "vanishes"),
    CorrectionEntry("iv", SingTypeId("A1", "Function"), FUNCTION, "NullCobordant", INT, (),
                    "vanishes"),
    CorrectionEntry("v", SingTypeId("A2", "RealUnoriented"), _exact(2, 2), "Any", Z2, (),
                    "vanishes"),
    CorrectionEntry("vi", SingTypeId("A2", "RealUnoriented"), PAIR_2K_2, "NullCobordant", Z2,
                    (("rot_boundary", 1),), "boundary rotation number"),
    CorrectionEntry("vii", SingTypeId("A2", "RealOriented"), PAIR_4K_6K1, "Sphere", INT,
                    (("Omega", SMALE_COEFF),), "Smale invariant"),
    CorrectionEntry("viii", SingTypeId("A2", "RealOriented"), _exact(4, 5), "Any", INT,
                    (("i_a", 2), ("tau", 3), ("delta", 1)),
                    "Saeki-Szucs-Takase invariant + Hirzebruch defect"),
    CorrectionEntry("ix", SingTypeId("Sigma2", "RealOriented"), _exact(4, 4), "Sphere", INT,
                    (("Omega_j", 2),), "Smale invariant"),
    CorrectionEntry("x", SingTypeId("Sigma2", "RealOriented"), _exact(4, 4), "Any", _Z24,
                    (("T", 2), ("mu", 3), ("delta", 1)),
                    "Takase invariant + mu-invariant + Hirzebruch defect"),
    CorrectionEntry("xi", SingTypeId("SigmaFR", "RealOriented"), _exact(8, 8), "Any", INT, (),
                    "vanishes"),
)


def correction_by_case(case: str) -> CorrectionEntry:
    for e in CORRECTION_ENTRIES:
        if e.case == case:
            return e
    raise CatalogMiss(f"no correction row ({case})")


def lookup_correction(type_id: SingTypeId, m: int, n: int, boundary: str) -> CorrectionEntry:
    boundary = normalize_boundary(boundary)
    cands = [
        ((BOUNDARY_KINDS[::-1].index(e.boundary), e.dims.specificity, -i), e)
        for i, e in enumerate(CORRECTION_ENTRIES)
        if e.type_id == type_id and e.dims.matches(m, n) and e.matches_boundary(boundary)
    ]
    return _pick(cands, f"correction for {type_id} at ({m}, {n}) with boundary {boundary}")


# -- dump -------------------------------------------------------------------------

_SAMPLE_DIMS: Dict[str, List[Tuple[int, int]]] = {
    "A1-real-m<=n": [(1, 1), (2, 3), (3, 5), (2, 4)],
    "A1-complex-m<=n": [(1, 1), (2, 3), (1, 3)],
    "A1-complex-(1,1)-full": [(1, 1)],
    "A2-oriented-(4k,6k-1)": [(4, 5), (8, 11)],
    "Sigma2-oriented-(4,4)": [(4, 4)],
    "SigmaFR-oriented-(8,8)": [(8, 8)],
    "A1-real-m>=n": [(3, 2), (4, 1), (5, 3)],
    "A1-function": [(2, 1), (3, 1)],
    "A2-real-(m,2)": [(2, 2), (4, 2), (6, 2)],
}


def dump_catalog() -> dict:
    """Whole catalog as JSON-ready data with canonical renderings."""
    thom = []
    for e in THOM_ENTRIES:
        samples = []
        for m, n in _SAMPLE_DIMS[e.key]:
            tp = e.build(m, n)
            samples.append({
                "m": m, "n": n,
                "codimension": codimension(e.type_id.name, m, n),
                "degree": cohomological_degree(e.type_id, m, n),
                "tp": str(tp),
            })
        thom.append({
            "key": e.key,
            "type": e.type_id.name,
            "category": e.type_id.category,
            "dims": e.dims.label,
            "target_classes": "full" if e.full_target else "zero",
            "ring": str(e.ring),
            "template": e.template,
            "samples": samples,
        })
    corrections = []
    for e in CORRECTION_ENTRIES:
        corrections.append({
            "case": e.case,
            "type": e.type_id.name,
            "category": e.type_id.category,
            "dims": e.dims.label,
            "boundary": e.boundary,
            "ring": str(e.ring),
            "formula": e.template(),
            "description": e.description,
        })
    return {"thom_polynomials": thom, "corrections": corrections}
