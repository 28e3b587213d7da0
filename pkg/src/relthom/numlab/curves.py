"""Double points of immersed plane curves and the planar k = 1 pushoff identity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .presets import MapPreset, PresetError, parse_endpoint
from .report import DEDUP_RADIUS, RESIDUAL_TOL, SingularityReport, SingularPoint, SolverError
from .solvers import newton_batch

CROSSING_MIN = 1e-3


class Curve:
    def __init__(self, preset: MapPreset):
        if preset.kind != "PlanarCurve":
            raise PresetError(f"{preset.name} is not a curve preset")
        self.comps = preset.curve()
        a, b = preset.domain["interval"]
        self.a, self.b = parse_endpoint(a), parse_endpoint(b)
        self.closed = bool(preset.domain.get("closed", False))
        self.period = self.b - self.a

    def __call__(self, t, order: int = 0) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.stack([c.value(t, order) for c in self.comps], axis=-1)

    def gap(self, s, t):
        d = np.abs(np.asarray(s) - np.asarray(t))
        return np.minimum(d, self.period - d) if self.closed else d

    def polyline(self, n: int) -> np.ndarray:
        t = np.linspace(self.a, self.b, n + 1)
        pts = self(t)
        return pts[:-1] if self.closed else pts

    def injectivity_window(self, samples: int = 4096) -> float:
        """A parameter length on which the curve is certainly injective.

        If f'(u) . f'(s) > 0 for all u within the window of s, the projection
        of f onto f'(s) is strictly monotone there.
        """
        t = np.linspace(self.a, self.b, samples, endpoint=not self.closed)
        d = self(t, 1)
        if np.min(np.linalg.norm(d, axis=1)) < 1e-9:
            raise SolverError("curve is not immersed (vanishing velocity)")
        step = t[1] - t[0]
        width = samples // 16
        while width >= 2:
            ok = True
            for k in range(1, width + 1):
                other = np.roll(d, -k, axis=0) if self.closed else d[k:]
                if np.min(np.sum(d[: len(other)] * other, axis=1)) <= 0:
                    ok = False
                    break
            if ok:
                return width * step
            width //= 2
        raise SolverError("could not certify local injectivity")


def _bbox(curve: Curve, lo: float, hi: float, vmax: float, k: int = 9):
    pts = curve(np.linspace(lo, hi, k))
    pad = vmax * (hi - lo) / (2 * (k - 1))
    return pts.min(axis=0) - pad, pts.max(axis=0) + pad


def _overlap(b1, b2) -> bool:
    return bool(np.all(b1[0] <= b2[1]) and np.all(b2[0] <= b1[1]))


def _sup_gap(curve: Curve, I, J) -> float:
    """Largest parameter gap |s - t| (cyclic for closed curves) over I x J."""
    dmin = max(0.0, J[0] - I[1], I[0] - J[1])
    dmax = max(I[1] - J[0], J[1] - I[0])
    if not curve.closed:
        return dmax
    half = curve.period / 2
    if dmin <= half <= dmax:
        return half
    return max(min(d, curve.period - d) for d in (dmin, dmax))


def planar_double_points(preset: MapPreset, initial: int = 64, leaf: float = 1e-3) -> SingularityReport:
    """Parameter pairs s < t with f(s) = f(t), by subdivision of the parameter square plus Newton."""
    curve = Curve(preset)
    window = curve.injectivity_window()
    vmax = 1.1 * float(np.max(np.linalg.norm(curve(np.linspace(curve.a, curve.b, 4096), 1), axis=1)))
    edges = np.linspace(curve.a, curve.b, initial + 1)
    stack = [((edges[i], edges[i + 1]), (edges[j], edges[j + 1])) for i in range(initial) for j in range(i, initial)]
    leaf_len = leaf * curve.period
    seeds = []
    while stack:
        I, J = stack.pop()
        if _sup_gap(curve, I, J) <= window:
            continue
        if not _overlap(_bbox(curve, *I, vmax), _bbox(curve, *J, vmax)):
            continue
        if max(I[1] - I[0], J[1] - J[0]) <= leaf_len:
            seeds.append([(I[0] + I[1]) / 2, (J[0] + J[1]) / 2])
            continue
        Is = [I] if I[1] - I[0] <= leaf_len else [(I[0], (I[0] + I[1]) / 2), ((I[0] + I[1]) / 2, I[1])]
        Js = [J] if J[1] - J[0] <= leaf_len else [(J[0], (J[0] + J[1]) / 2), ((J[0] + J[1]) / 2, J[1])]
        stack.extend((a, b) for a in Is for b in Js)

    F = lambda V: curve(V[:, 0]) - curve(V[:, 1])
    Jf = lambda V: np.stack([curve(V[:, 0], 1), -curve(V[:, 1], 1)], axis=2)
    found = []
    if seeds:
        X, res = newton_batch(F, Jf, np.array(seeds))
        for (s, t), r in zip(X, res):
            if r >= RESIDUAL_TOL:
                continue
            if curve.closed:
                s, t = sorted(((s - curve.a) % curve.period + curve.a, (t - curve.a) % curve.period + curve.a))
            else:
                if not (curve.a <= s <= curve.b and curve.a <= t <= curve.b):
                    continue
                s, t = sorted((s, t))
            if curve.gap(s, t) <= window / 2:
                continue
            if not any(abs(s - p[0]) < DEDUP_RADIUS and abs(t - p[1]) < DEDUP_RADIUS for p, _ in found):
                found.append(((float(s), float(t)), float(r)))
    pts = []
    for (s, t), r in sorted(found):
        if not curve.closed and min(s - curve.a, curve.b - t, curve.b - s, t - curve.a) < 1e-9:
            raise SolverError("double point at an endpoint")
        v1, v2 = curve(s, 1)[0], curve(t, 1)[0]
        sine = abs(v1[0] * v2[1] - v1[1] * v2[0]) / (np.linalg.norm(v1) * np.linalg.norm(v2))
        if sine < CROSSING_MIN:
            raise SolverError(f"tangential self-intersection at parameters ({s:.6g}, {t:.6g})")
        pts.append(SingularPoint((s, t), r, 1, 1))
    rep = SingularityReport(kind="double-points", points=pts, count=len(pts))
    rep.diagnostics.update({"leaf_pairs": len(seeds), "injectivity_window": round(float(window), 9)})
    return rep


# -- dense oracle --------------------------------------------------------------------------------


def segment_crossings(A: np.ndarray, B: np.ndarray, closed_a: bool, closed_b: bool,
                      same: bool = False, chunk: int = 256) -> List[Tuple[int, int]]:
    """Index pairs (i, j) of crossing segments A[i]A[i+1], B[j]B[j+1] (half-open)."""
    Ae = np.vstack([A, A[:1]]) if closed_a else A
    Be = np.vstack([B, B[:1]]) if closed_b else B
    p, r = Ae[:-1], np.diff(Ae, axis=0)
    q, s = Be[:-1], np.diff(Be, axis=0)
    out = []
    nb = len(q)
    for start in range(0, len(p), chunk):
        pi, ri = p[start:start + chunk, None, :], r[start:start + chunk, None, :]
        qp = q[None, :, :] - pi
        den = ri[..., 0] * s[None, :, 1] - ri[..., 1] * s[None, :, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            u = (qp[..., 0] * s[None, :, 1] - qp[..., 1] * s[None, :, 0]) / den
            v = (qp[..., 0] * ri[..., 1] - qp[..., 1] * ri[..., 0]) / den
        hit = (den != 0) & (u >= 0) & (u < 1) & (v >= 0) & (v < 1)
        for i, j in zip(*np.nonzero(hit)):
            i = int(i) + start
            j = int(j)
            if same:
                d = abs(i - j)
                if closed_a:
                    d = min(d, nb - d)
                if j <= i or d <= 1:
                    continue
            out.append((i, j))
    return out


def dense_double_points(preset: MapPreset, n: int = 4000) -> int:
    """Brute-force O(n^2) count of polyline self-crossings."""
    curve = Curve(preset)
    return len(segment_crossings(curve.polyline(n), curve.polyline(n), curve.closed, curve.closed, same=True))


# -- planar pushoff identity ----------------------------------------------------------------------


@dataclass(frozen=True)
class HerbertCheck:
    preset: str
    mode: str
    double_points: int
    left: int
    intersections: int
    euler_term: int
    right: int

    @property
    def holds(self) -> bool:
        return self.left == self.right

    def to_dict(self) -> dict:
        return {"preset": self.preset, "mode": self.mode, "double_points": self.double_points,
                "left": self.left, "intersections": self.intersections, "euler_term": self.euler_term,
                "right": self.right, "holds": self.holds}


def verify_herbert_planar(preset: MapPreset, mode: str = "same", eps: float = 1e-2, n: int = 3001) -> HerbertCheck:
    """Both sides of m_2 = (pushoff meets image) - e(nu | theta), mod 2.

    The pushoff moves f along rho(t) * n(t), with n the left unit normal and
    rho = 1 ("same") or rho linear from -1 to 1 ("flip").  Its value at the
    endpoints is the boundary field theta; the zeros of rho are the relative
    Euler number of the normal bundle.  The left side counts double-point
    preimages, taken from the subdivision solver; the right side comes from
    a polyline crossing count that never looks at that solver.
    """
    curve = Curve(preset)
    if mode not in ("same", "flip"):
        raise ValueError(f"unknown pushoff mode {mode!r}")
    if mode == "flip" and curve.closed:
        raise ValueError("a closed curve has no boundary field to flip")
    D = planar_double_points(preset).count

    n += n % 2 == 0  # odd sample count keeps the zero of rho off a vertex
    t = np.linspace(curve.a, curve.b, n + 1)
    if curve.closed:
        t = t[:-1]
    rho = np.ones_like(t) if mode == "same" else 2 * (t - curve.a) / curve.period - 1
    d = curve(t, 1)
    normal = np.stack([-d[:, 1], d[:, 0]], axis=1) / np.linalg.norm(d, axis=1)[:, None]
    base = curve(t)
    pushed = base + eps * rho[:, None] * normal
    crossings = len(segment_crossings(pushed, base, curve.closed, curve.closed))
    euler_term = int(np.count_nonzero(np.sign(rho[1:]) != np.sign(rho[:-1])))
    return HerbertCheck(preset.name, mode, D, (2 * D) % 2, crossings, euler_term, (crossings - euler_term) % 2)
