"""Fold curves, cusps and rotation numbers of plane-to-plane maps.

For F = (u, v) the fold locus is {lam = 0}, lam = det dF.  A fold point is a
cusp when the kernel of dF is tangent to the fold locus.  The kernel is
spanned by (u_y, -u_x) or (v_y, -v_x), so cusps solve the overdetermined
but consistent system

    lam = 0,  lam_x u_y - lam_y u_x = 0,  lam_x v_y - lam_y v_x = 0,

which stays valid wherever one row of dF is nonzero.
"""

from __future__ import annotations

from typing import Callable, List, Tuple

import numpy as np

from .bivariate import BiPoly
from .presets import MapPreset, PresetError
from .report import DEDUP_RADIUS, SingularityReport, SingularPoint, SolverError, sort_points
from .solvers import grid_newton, real_grid

TRANSVERSALITY_MIN = 1e-6


def _cols(V):
    return V[:, 0], V[:, 1]


class PlaneMap:
    def __init__(self, u: BiPoly, v: BiPoly):
        self.u, self.v = u, v
        self.ux, self.uy, self.vx, self.vy = u.dx(), u.dy(), v.dx(), v.dy()
        self.lam = self.ux * self.vy - self.uy * self.vx
        self.lx, self.ly = self.lam.dx(), self.lam.dy()
        self.g1 = self.lx * self.uy - self.ly * self.ux
        self.g2 = self.lx * self.vy - self.ly * self.vx
        self.system = [self.lam, self.g1, self.g2]
        self.grads = [(p.dx(), p.dy()) for p in self.system]

    @classmethod
    def from_preset(cls, preset: MapPreset) -> "PlaneMap":
        if preset.kind != "PlaneMap":
            raise PresetError(f"{preset.name} is not a plane map")
        return cls(*preset.bipolys())

    def __call__(self, x, y):
        return np.stack([self.u(x, y), self.v(x, y)], axis=-1)

    def jacobian(self, x, y):
        return np.stack([np.stack([self.ux(x, y), self.uy(x, y)], -1),
                         np.stack([self.vx(x, y), self.vy(x, y)], -1)], -2)

    def cusp_F(self, V):
        x, y = _cols(V)
        return np.stack([p(x, y) for p in self.system], axis=1)

    def cusp_J(self, V):
        x, y = _cols(V)
        return np.stack([np.stack([gx(x, y), gy(x, y)], axis=1) for gx, gy in self.grads], axis=1)


# -- fold tracing ----------------------------------------------------------------------


def _project(pm: PlaneMap, p: np.ndarray, iters: int = 30) -> np.ndarray:
    """Move p onto lam = 0 along the gradient (minimal-norm Newton)."""
    for _ in range(iters):
        val = pm.lam(p[0], p[1])
        g = np.array([pm.lx(p[0], p[1]), pm.ly(p[0], p[1])])
        gg = g @ g
        if gg < 1e-20:
            raise SolverError(f"fold locus is singular near {tuple(p)}")
        p = p - val * g / gg
        if abs(val) < 1e-14:
            break
    return p


def _tangent(pm: PlaneMap, p: np.ndarray) -> np.ndarray:
    t = np.array([-pm.ly(p[0], p[1]), pm.lx(p[0], p[1])])
    return t / np.linalg.norm(t)


def _march(pm: PlaneMap, start: np.ndarray, direction: float, radius: float, h: float,
           max_steps: int) -> Tuple[List[np.ndarray], bool]:
    pts = [start]
    p, t_prev = start, direction * _tangent(pm, start)
    for step in range(max_steps):
        q = _project(pm, p + h * t_prev)
        if np.hypot(*q) > radius:
            return pts, False
        t = _tangent(pm, q)
        if t @ t_prev < 0:
            t = -t
        if step > 3 and np.linalg.norm(q - start) < 0.75 * h:
            return pts, True
        pts.append(q)
        p, t_prev = q, t
    raise SolverError("fold continuation did not terminate")


def trace_fold_curves(pm: PlaneMap, radius: float, h: float = 5e-3, grid: int = 64):
    """Components of {lam = 0} inside the disk: list of (points array, closed flag)."""
    xs = np.linspace(-radius, radius, grid)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    L = pm.lam(X, Y)
    seeds = []
    for axis in (0, 1):
        a = L[:-1, :] if axis == 0 else L[:, :-1]
        b = L[1:, :] if axis == 0 else L[:, 1:]
        for i, j in zip(*np.nonzero(np.sign(a) * np.sign(b) < 0)):
            p0 = np.array([X[i, j], Y[i, j]])
            p1 = np.array([X[i + (axis == 0), j + (axis == 1)], Y[i + (axis == 0), j + (axis == 1)]])
            s = a[i, j] / (a[i, j] - b[i, j])
            seeds.append(p0 + s * (p1 - p0))
    seeds = [s for s in (_project(pm, s) for s in seeds) if np.hypot(*s) < radius - h]
    seeds.sort(key=lambda s: (round(s[0], 9), round(s[1], 9)))
    max_steps = int(40 * radius / h) + 1000
    components = []
    for s in seeds:
        if any(np.min(np.linalg.norm(c - s, axis=1)) < 3 * h for c, _ in components):
            continue
        fwd, closed = _march(pm, s, 1.0, radius, h, max_steps)
        if not closed:
            back, _ = _march(pm, s, -1.0, radius, h, max_steps)
            fwd = back[::-1] + fwd[1:]
        components.append((np.array(fwd), closed))
    return components


# -- rotation numbers -------------------------------------------------------------------


def winding_of_samples(vectors: np.ndarray) -> float:
    """Total turning of a closed sampled vector loop, in full turns."""
    ang = np.arctan2(vectors[:, 1], vectors[:, 0])
    d = np.diff(np.append(ang, ang[0]))
    d = (d + np.pi) % (2 * np.pi) - np.pi
    return float(d.sum() / (2 * np.pi))


def _stable_winding(sample: Callable[[int], np.ndarray], start: int = 256, limit: int = 1 << 18) -> int:
    prev, n = None, start
    while n <= limit:
        vecs = sample(n)
        if np.min(np.linalg.norm(vecs, axis=1)) < 1e-12:
            raise SolverError("vector field vanishes at a sample point")
        w = int(round(winding_of_samples(vecs)))
        if w == prev:
            return w
        prev, n = w, 2 * n
    raise SolverError("winding number did not stabilize under refinement")


def boundary_rotation(field: Callable[[np.ndarray], np.ndarray]) -> Tuple[int, int]:
    """Rotation of a nonvanishing field on the unit circle against the outward normal.

    ``field`` maps angles (array) to vectors (array of shape (N, 2)).
    Returns (winding(field) - winding(normal), its reduction mod 2); the
    outward normal winds once.
    """
    w = _stable_winding(lambda n: np.asarray(field(np.linspace(0, 2 * np.pi, n, endpoint=False)), dtype=float))
    rot = w - 1
    return rot, rot % 2


def prot_of_component(pm: PlaneMap, pts: np.ndarray) -> int:
    """Degree in RP^1 of the image line field along a closed fold curve.

    On the fold locus dF has rank one and its image is the tangent line of
    the image curve (continuous through cusps).  The doubled angle of that
    line is the angle of (M00 - M11, 2 M01) with M = dF dF^T.
    """
    def sample(n):
        # resample the closed polyline uniformly in arc length
        closed = np.vstack([pts, pts[:1]])
        seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
        s = np.concatenate([[0], np.cumsum(seg)])
        t = np.linspace(0, s[-1], n, endpoint=False)
        q = np.stack([np.interp(t, s, closed[:, 0]), np.interp(t, s, closed[:, 1])], axis=1)
        J = pm.jacobian(q[:, 0], q[:, 1])
        M = J @ np.swapaxes(J, 1, 2)
        return np.stack([M[:, 0, 0] - M[:, 1, 1], 2 * M[:, 0, 1]], axis=1)

    return _stable_winding(sample, start=max(256, len(pts)))


def induced_frame_rotation(pm: PlaneMap, radius: float) -> Tuple[int, int]:
    """rot of theta_1 = dF^{-1} e_1 on the boundary circle of the disk."""
    def field(t):
        x, y = radius * np.cos(t), radius * np.sin(t)
        lam = pm.lam(x, y)
        if np.min(np.abs(lam)) < 1e-9 or np.ptp(np.sign(lam)) > 0:
            raise SolverError("map is singular on the boundary circle")
        return np.stack([pm.vy(x, y), -pm.vx(x, y)], axis=1) / lam[:, None]
    return boundary_rotation(field)


# -- cusps -------------------------------------------------------------------------------------


def find_cusps(pm: PlaneMap, radius: float, grid: int = 41) -> List[SingularPoint]:
    inside = lambda p: np.hypot(*p) < radius
    roots = grid_newton(pm.cusp_F, pm.cusp_J, real_grid((-radius, -radius), (radius, radius), grid), accept=inside)
    out = []
    for p, res in roots:
        if abs(np.hypot(*p) - radius) < DEDUP_RADIUS:
            raise SolverError("cusp on the boundary circle")
        J = pm.cusp_J(p[None, :])[0]
        smin = np.linalg.svd(J, compute_uv=False)[-1]
        if smin < TRANSVERSALITY_MIN:
            raise SolverError(f"non-generic cusp at {tuple(p)}")
        if np.abs(pm.jacobian(p[0], p[1])).max() < TRANSVERSALITY_MIN:
            raise SolverError(f"corank-2 point at {tuple(p)}")
        out.append(SingularPoint(tuple(float(c) for c in p), res, 1, 1))
    return sort_points(out)


def detect_folds_cusps(preset: MapPreset, trace: bool = True) -> SingularityReport:
    pm = PlaneMap.from_preset(preset)
    radius = preset.disk_radius
    cusps = find_cusps(pm, radius)
    report = SingularityReport(kind="cusps", points=cusps, count=len(cusps))
    if trace:
        comps = trace_fold_curves(pm, radius)
        info = []
        for pts, closed in comps:
            on = sum(1 for c in cusps if np.min(np.linalg.norm(pts - np.array(c.coords), axis=1)) < 1e-2)
            entry = {"closed": closed, "cusps": on, "prot": None}
            if closed:
                entry["prot"] = prot_of_component(pm, pts)
                report.prot_values.append(entry["prot"])
            info.append(entry)
        report.diagnostics["fold_components"] = info
    return report
