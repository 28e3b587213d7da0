"""Map presets: closed-form polynomial (or trigonometric) maps with a domain.

The corpus lives in ``data/presets.json``.  Coefficients are exact
rationals written as strings; a coefficient may also mention the preset's
perturbation parameter as ``"eps"``, ``"-eps"`` or ``"<rational>*eps"``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, List, Mapping, Optional, Tuple

import numpy as np

from .bivariate import BiPoly

KINDS = ("HolomorphicDisk", "MorseFunction", "PlaneMap", "RealGerm23", "ComplexGerm23", "PlanarCurve")
_COMPONENTS = {"HolomorphicDisk": 1, "MorseFunction": 1, "PlaneMap": 2, "RealGerm23": 3,
               "ComplexGerm23": 3, "PlanarCurve": 2}
_KEYS = {"name", "kind", "components", "domain", "perturbation", "family", "expected", "profile", "pushoff", "notes"}


class PresetError(ValueError):
    pass


def parse_coefficient(text: Any, eps: Fraction) -> Fraction:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return Fraction(str(text))
    s = str(text).replace(" ", "")
    if "eps" not in s:
        return Fraction(s)
    if s == "eps":
        return eps
    if s == "-eps":
        return -eps
    if s.endswith("*eps"):
        return Fraction(s[:-4]) * eps
    raise PresetError(f"cannot parse coefficient {text!r}")


@dataclass(frozen=True)
class CurveComponent:
    """x(t) as a polynomial plus a finite Fourier sum."""

    poly: Tuple[Fraction, ...] = ()
    cos: Tuple[Tuple[int, Fraction], ...] = ()
    sin: Tuple[Tuple[int, Fraction], ...] = ()

    def value(self, t, order: int = 0):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        if self.poly:
            c = np.array([float(x) for x in self.poly])
            out = out + np.polynomial.polynomial.polyval(t, np.polynomial.polynomial.polyder(c, order) if order else c)
        for k, a in self.cos:
            # d^r/dt^r cos(kt) = k^r cos(kt + r pi/2)
            out = out + float(a) * k ** order * np.cos(k * t + order * math.pi / 2)
        for k, a in self.sin:
            out = out + float(a) * k ** order * np.sin(k * t + order * math.pi / 2)
        return out


@dataclass(frozen=True)
class MapPreset:
    name: str
    kind: str
    raw_components: Tuple[Any, ...]
    domain: Mapping[str, Any]
    eps: Fraction = Fraction(0)
    eps_name: str = "eps"
    family: Tuple[Fraction, ...] = ()
    expected: Mapping[str, Any] = field(default_factory=dict)
    profile: Mapping[str, Any] = field(default_factory=dict)
    pushoff: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PresetError(f"unknown preset kind {self.kind!r}")
        if len(self.raw_components) != _COMPONENTS[self.kind]:
            raise PresetError(f"{self.name}: {self.kind} needs {_COMPONENTS[self.kind]} components")

    def with_eps(self, eps) -> "MapPreset":
        return replace(self, eps=Fraction(eps))

    def members(self) -> List["MapPreset"]:
        """The preset at each documented perturbation value (itself if no family)."""
        return [self.with_eps(e) for e in self.family] or [self]

    # -- component views ----------------------------------------------------------

    def bipolys(self) -> List[BiPoly]:
        if self.kind in ("HolomorphicDisk", "PlanarCurve"):
            raise PresetError(f"{self.kind} presets are not bivariate")
        return [BiPoly({_key(k): parse_coefficient(v, self.eps) for k, v in comp.items()})
                for comp in self.raw_components]

    def univariate(self) -> List[complex]:
        if self.kind != "HolomorphicDisk":
            raise PresetError("not a one-variable preset")
        out = []
        for c in self.raw_components[0]:
            if isinstance(c, list):
                out.append(complex(float(parse_coefficient(c[0], self.eps)), float(parse_coefficient(c[1], self.eps))))
            else:
                out.append(complex(float(parse_coefficient(c, self.eps))))
        return out

    def curve(self) -> List[CurveComponent]:
        if self.kind != "PlanarCurve":
            raise PresetError("not a curve preset")
        comps = []
        for comp in self.raw_components:
            poly = tuple(parse_coefficient(c, self.eps) for c in comp.get("poly", ()))
            cos = tuple(sorted((int(k), parse_coefficient(v, self.eps)) for k, v in comp.get("cos", {}).items()))
            sin = tuple(sorted((int(k), parse_coefficient(v, self.eps)) for k, v in comp.get("sin", {}).items()))
            comps.append(CurveComponent(poly, cos, sin))
        return comps

    @property
    def disk_radius(self) -> float:
        if "disk" not in self.domain:
            raise PresetError(f"{self.name} has no disk domain")
        return float(Fraction(str(self.domain["disk"])))

    @property
    def box(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        if "box" in self.domain:
            (a, b), (c, d) = self.domain["box"]
            return (float(a), float(b)), (float(c), float(d))
        r = self.disk_radius
        return (-r, r), (-r, r)


def _key(text: str) -> Tuple[int, int]:
    i, j = text.split(",")
    return int(i), int(j)


def preset_from_dict(data: Mapping[str, Any]) -> MapPreset:
    unknown = set(data) - _KEYS
    if unknown:
        raise PresetError(f"unknown preset keys {sorted(unknown)}")
    pert = data.get("perturbation", {})
    return MapPreset(
        name=data["name"],
        kind=data["kind"],
        raw_components=tuple(data["components"]),
        domain=dict(data.get("domain", {})),
        eps=Fraction(str(pert.get("value", 0))),
        eps_name=pert.get("name", "eps"),
        family=tuple(Fraction(str(v)) for v in data.get("family", ())),
        expected=dict(data.get("expected", {})),
        profile=dict(data.get("profile", {})),
        pushoff=tuple(data.get("pushoff", ())),
    )


@lru_cache(maxsize=None)
def _corpus() -> Tuple[MapPreset, ...]:
    text = resources.files(__package__).joinpath("data/presets.json").read_text()
    return tuple(preset_from_dict(d) for d in json.loads(text))


def all_presets(kind: Optional[str] = None) -> List[MapPreset]:
    return [p for p in _corpus() if kind is None or p.kind == kind]


def get_preset(name: str) -> MapPreset:
    for p in _corpus():
        if p.name == name:
            return p
    raise KeyError(f"no preset named {name!r}")


def parse_endpoint(text: Any) -> float:
    """Interval endpoint: a rational, or a rational multiple of pi written like ``2pi``."""
    s = str(text).replace(" ", "")
    if s.endswith("pi"):
        head = s[:-2].rstrip("*")
        return float(Fraction(head or "1")) * math.pi
    return float(Fraction(s))
