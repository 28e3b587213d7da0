"""Critical points of holomorphic disk maps and Morse functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from .presets import MapPreset, PresetError
from .report import SingularityReport, SingularPoint, SolverError, sort_points
from .solvers import cluster_roots, companion_roots, grid_newton, real_grid

BOUNDARY_BAND = 1e-6
HESSIAN_MIN = 1e-8


@dataclass(frozen=True)
class ComplexPoly:
    """sum coeffs[i] z^i; trailing zeros are trimmed so the leading coefficient is nonzero."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(complex(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def derivative(self) -> "ComplexPoly":
        return ComplexPoly(tuple(P.polyder(np.array(self.coeffs))) or (0,))

    def __call__(self, z):
        return P.polyval(z, np.array(self.coeffs))

    @classmethod
    def from_critical_points(cls, points: Sequence[complex], constant: complex = 0) -> "ComplexPoly":
        """Monic p with p' = d * prod(z - c_i), d = len(points) + 1."""
        d = len(points) + 1
        deriv = d * P.polyfromroots(points) if points else np.array([1.0])
        return cls(tuple(P.polyint(deriv, k=[constant])))


def critical_points_in_disk(p: ComplexPoly, radius: float = 1.0) -> SingularityReport:
    """Roots of p' inside |z| < radius, clustered into multiplicities."""
    report = SingularityReport(kind="critical-points")
    if p.degree < 2:
        report.diagnostics["degree"] = max(p.degree, 0)
        return report
    dp = p.derivative()
    roots = companion_roots(dp.coeffs)
    pts = []
    for z, mult in cluster_roots(roots):
        if abs(abs(z) - radius) < BOUNDARY_BAND:
            raise SolverError(f"critical point {z:.3g} lies on the boundary circle")
        if abs(z) < radius:
            res = float(abs(dp(z))) if mult == 1 else 0.0
            pts.append(SingularPoint((z,), res, mult, 1))
    report.points = sort_points(pts)
    report.count = sum(pt.multiplicity for pt in pts)
    report.diagnostics.update({"degree": p.degree, "roots_total": len(roots)})
    return report


def winding_count(p: ComplexPoly, radius: float = 1.0, samples: int = 4096) -> int:
    """Zeros of p' inside the circle by the argument principle (independent of eigen-solves)."""
    dp = p.derivative()
    prev = None
    while True:
        t = np.linspace(0.0, 2 * np.pi, samples + 1)
        vals = dp(radius * np.exp(1j * t))
        if np.min(np.abs(vals)) < 1e-12:
            raise SolverError("p' vanishes on the circle")
        turns = np.sum(np.angle(vals[1:] / vals[:-1])) / (2 * np.pi)
        n = int(round(turns))
        if prev == n:
            return n
        prev, samples = n, samples * 2
        if samples > 1 << 20:
            raise SolverError("argument principle did not stabilize")


# -- Morse functions -----------------------------------------------------------------------


def _levels(preset: MapPreset) -> Tuple[Optional[float], Optional[float]]:
    lo, hi = preset.domain.get("levels", [None, None])
    conv = lambda v: None if v is None else float(Fraction(str(v)))
    return conv(lo), conv(hi)


def region_mask(preset: MapPreset, x, y):
    f = preset.bipolys()[0]
    lo, hi = _levels(preset)
    val = f(x, y)
    mask = np.ones_like(val, dtype=bool)
    if lo is not None:
        mask &= val >= lo
    if hi is not None:
        mask &= val <= hi
    return mask


def morse_signed_count(preset: MapPreset, grid: int = 41) -> SingularityReport:
    """Signed count of gradient zeros in the preset's region (sign of the Hessian determinant)."""
    if preset.kind != "MorseFunction":
        raise PresetError(f"{preset.name} is not a Morse preset")
    f = preset.bipolys()[0]
    fx, fy = f.dx(), f.dy()
    fxx, fxy, fyy = fx.dx(), fx.dy(), fy.dy()
    (x0, x1), (y0, y1) = preset.box
    lo, hi = _levels(preset)

    F = lambda V: np.stack([fx(V[:, 0], V[:, 1]), fy(V[:, 0], V[:, 1])], axis=1)

    def J(V):
        a, b, d = (g(V[:, 0], V[:, 1]) for g in (fxx, fxy, fyy))
        return np.stack([np.stack([a, b], axis=1), np.stack([b, d], axis=1)], axis=1)

    inside_box = lambda v: x0 <= v[0] <= x1 and y0 <= v[1] <= y1
    roots = grid_newton(F, J, real_grid((x0, y0), (x1, y1), grid), accept=inside_box)

    pts = []
    for v, res in roots:
        val = float(f(*v))
        if (lo is not None and val < lo) or (hi is not None and val > hi):
            continue
        if any(b is not None and abs(val - b) < 1e-9 for b in (lo, hi)):
            raise SolverError(f"critical point at {tuple(v)} lies on the region boundary")
        hdet = float(np.linalg.det(J(v[None, :])[0]))
        if abs(hdet) < HESSIAN_MIN:
            raise SolverError(f"degenerate critical point at {tuple(v)}")
        pts.append(SingularPoint(tuple(float(c) for c in v), res, 1, 1 if hdet > 0 else -1))
    report = SingularityReport(kind="morse", points=sort_points(pts))
    report.count = sum(p.sign for p in pts)
    report.diagnostics.update({"seeds": grid * grid, "critical_points": len(pts)})
    return report


def pixel_euler_characteristic(preset: MapPreset, n: int = 801) -> int:
    """Euler characteristic of the region from a cubical complex on an n x n grid.

    Vertices are grid nodes inside the region, edges join adjacent inside
    nodes and squares need all four corners inside.  Independent of any
    critical-point computation.
    """
    (x0, x1), (y0, y1) = preset.box
    xs, ys = np.linspace(x0, x1, n), np.linspace(y0, y1, n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    m = region_mask(preset, X, Y)
    v = int(m.sum())
    e = int((m[1:, :] & m[:-1, :]).sum() + (m[:, 1:] & m[:, :-1]).sum())
    f = int((m[1:, 1:] & m[:-1, 1:] & m[1:, :-1] & m[:-1, :-1]).sum())
    return v - e + f
