"""Cross-cap (A1) points of perturbed germs (x, y) -> (x, g, h).

The Jacobian rows are (1, 0), (g_x, g_y), (h_x, h_y), so its 2x2 minors are
g_y, h_y and g_x h_y - g_y h_x.  Rank <= 1 means g_y = h_y = 0; the third
minor then vanishes too and serves as an independent check.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .bivariate import BiPoly, resultant_y
from .presets import MapPreset, PresetError
from .report import RESIDUAL_TOL, SingularityReport, SingularPoint, SolverError, sort_points
from .solvers import companion_roots, complex_grid, dedup, grid_newton, newton_batch, real_grid

SIMPLE_MIN = 1e-8
REAL_IMAG_TOL = 1e-9


class MinorSystem:
    def __init__(self, preset: MapPreset):
        if preset.kind not in ("RealGerm23", "ComplexGerm23"):
            raise PresetError(f"{preset.name} is not a germ (2 -> 3) preset")
        first, g, h = preset.bipolys()
        if first != BiPoly({(1, 0): 1}):
            raise PresetError("germ presets must have first component x")
        self.g, self.h = g, h
        self.a, self.b = g.dy(), h.dy()
        self.third = g.dx() * h.dy() - g.dy() * h.dx()
        self.grads = [(self.a.dx(), self.a.dy()), (self.b.dx(), self.b.dy())]

    def F(self, V):
        x, y = V[:, 0], V[:, 1]
        return np.stack([self.a(x, y), self.b(x, y)], axis=1)

    def J(self, V):
        x, y = V[:, 0], V[:, 1]
        return np.stack([np.stack([px(x, y), py(x, y)], axis=1) for px, py in self.grads], axis=1)

    def certify(self, p) -> float:
        """Check simplicity and the third minor; returns the full residual."""
        v = np.asarray(p)[None, :]
        det = np.linalg.det(self.J(v)[0])
        if abs(det) < SIMPLE_MIN:
            raise SolverError(f"non-simple cross-cap at {tuple(p)}")
        res = float(np.linalg.norm(np.append(self.F(v)[0], self.third(v[0, 0], v[0, 1]))))
        if res >= RESIDUAL_TOL:
            raise SolverError(f"minor validation failed at {tuple(p)} (residual {res:.2e})")
        return res


def _polish(ms: MinorSystem, points: List[np.ndarray]) -> List[Tuple[np.ndarray, float]]:
    if not points:
        return []
    X, res = newton_batch(ms.F, ms.J, np.array(points))
    return [(x, r) for x, r in zip(X, res)]


def _report(kind: str, ms: MinorSystem, found, method: str) -> SingularityReport:
    pts = []
    for p, _ in found:
        res = ms.certify(p)
        pts.append(SingularPoint(tuple(p), res, 1, 1))
    rep = SingularityReport(kind=kind, points=sort_points(pts), count=len(pts))
    rep.diagnostics.update({"method": method, "count_mod2": len(pts) % 2})
    return rep


def _resultant_points(ms: MinorSystem, real: bool, box: float) -> List[np.ndarray]:
    res = resultant_y(ms.a, ms.b)
    if all(c == 0 for c in res):
        raise SolverError("resultant vanishes identically: non-generic germ")
    xs = companion_roots([complex(c) for c in res])
    cands = []
    for x0 in xs:
        if real and abs(x0.imag) > REAL_IMAG_TOL:
            continue
        x0 = complex(x0.real, 0.0) if real else x0
        if max(abs(x0.real), abs(x0.imag)) > box:
            raise SolverError(f"solution x = {x0:.3g} escapes the search box")
        ycoef = [complex(c) for c in ms.a.y_coeffs_at(x0)]
        for y0 in companion_roots(ycoef):
            if real and abs(y0.imag) > REAL_IMAG_TOL:
                continue
            if abs(ms.b(x0, y0)) < 1e-6:
                cands.append(np.array([x0, y0]) if not real else np.array([x0.real, y0.real]))
    return cands


def cross_caps_real(preset: MapPreset, method: str = "newton", grid: int = 41) -> SingularityReport:
    """Real A1 points: ``method`` is "newton" (grid seeds) or "resultant"."""
    if preset.kind != "RealGerm23":
        raise PresetError(f"{preset.name} is not a real germ preset")
    ms = MinorSystem(preset)
    (x0, x1), (y0, y1) = preset.box
    if method == "newton":
        inside = lambda p: x0 <= p[0] <= x1 and y0 <= p[1] <= y1
        found = grid_newton(ms.F, ms.J, real_grid((x0, y0), (x1, y1), grid), accept=inside)
    elif method == "resultant":
        found = dedup([(p, r) for p, r in _polish(ms, _resultant_points(ms, True, max(x1, -x0)))
                       if r < RESIDUAL_TOL and y0 <= p[1] <= y1])
    else:
        raise ValueError(f"unknown method {method!r}")
    return _report("cross-caps-real", ms, found, method)


def cross_caps_complex(preset: MapPreset, method: str = "resultant", grid: int = 6) -> SingularityReport:
    """Complex A1 points: ``method`` is "resultant" (elimination) or "newton" (grid in C^2)."""
    if preset.kind != "ComplexGerm23":
        raise PresetError(f"{preset.name} is not a complex germ preset")
    ms = MinorSystem(preset)
    r = preset.disk_radius
    if method == "resultant":
        found = dedup([(p, res) for p, res in _polish(ms, _resultant_points(ms, False, r)) if res < RESIDUAL_TOL])
    elif method == "newton":
        inside = lambda p: np.max(np.abs(np.concatenate([p.real, p.imag]))) <= r
        found = grid_newton(ms.F, ms.J, complex_grid(r, grid, 2), accept=inside)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _report("cross-caps-complex", ms, found, method)
