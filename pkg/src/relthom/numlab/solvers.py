"""Root finding building blocks: companion eigenvalues, clustering, Newton from grids."""

from __future__ import annotations

from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from .report import CLUSTER_RADIUS, DEDUP_RADIUS, NEWTON_TOL, RESIDUAL_TOL

Vector = np.ndarray


def companion_roots(coeffs: Sequence[complex]) -> np.ndarray:
    """Roots of sum coeffs[i] z^i via eigenvalues of the companion matrix."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    return P.polyroots(c)


def cluster_roots(roots: Iterable[complex], radius: float = CLUSTER_RADIUS) -> List[Tuple[complex, int]]:
    """Group roots closer than ``radius``; returns (mean, cluster size) pairs."""
    remaining = sorted((complex(r) for r in roots), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    clusters: List[List[complex]] = []
    for z in remaining:
        for cl in clusters:
            if abs(z - cl[0]) < radius:
                cl.append(z)
                break
        else:
            clusters.append([z])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]


def newton_batch(F: Callable[[np.ndarray], np.ndarray], J: Callable[[np.ndarray], np.ndarray],
                 X0: np.ndarray, tol: float = NEWTON_TOL, max_iter: int = 60) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized Gauss-Newton over a stack of starting points.

    ``F`` maps an (N, n) array to (N, k) residuals and ``J`` to (N, k, n)
    Jacobians, k >= n.  Square systems reduce to plain Newton.  Works over
    the reals or, for holomorphic systems, over the complex numbers.
    Returns final iterates and residual norms (inf for diverged seeds).
    """
    X = np.array(X0, dtype=complex if np.iscomplexobj(X0) else float)
    active = np.ones(len(X), dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        xa = X[active]
        fx = F(xa)
        done = np.linalg.norm(fx, axis=1) < tol
        step = -np.einsum("nij,nj->ni", np.linalg.pinv(J(xa)), fx)
        step[done] = 0
        xa = xa + step
        X[active] = xa
        small = np.linalg.norm(step, axis=1) < tol * 1e-2 * (1.0 + np.linalg.norm(xa, axis=1))
        bad = ~np.all(np.isfinite(xa), axis=1) | (np.linalg.norm(np.nan_to_num(xa, nan=1e9), axis=1) > 1e8)
        idx = np.flatnonzero(active)
        active[idx[done | small | bad]] = False
    X = np.nan_to_num(X, nan=1e9, posinf=1e9, neginf=-1e9)
    res = np.linalg.norm(F(X), axis=1)
    res[np.linalg.norm(X, axis=1) > 1e8] = np.inf
    return X, res


def newton(F, J, x0, tol: float = NEWTON_TOL, max_iter: int = 60) -> Tuple[Vector, float]:
    """Single-start version of :func:`newton_batch` with unbatched callables."""
    Fb = lambda X: np.stack([np.atleast_1d(F(x)) for x in X])
    Jb = lambda X: np.stack([np.atleast_2d(J(x)) for x in X])
    X, res = newton_batch(Fb, Jb, np.asarray(x0)[None, :], tol, max_iter)
    return X[0], float(res[0])


def dedup(points: Iterable[Tuple[Vector, float]], radius: float = DEDUP_RADIUS) -> List[Tuple[Vector, float]]:
    """Merge points closer than ``radius`` keeping the smallest residual.

    Candidates are sorted first so the outcome does not depend on the
    order in which seeds were processed.
    """
    def key(item):
        x = np.asarray(item[0])
        return tuple(v for c in x for v in (round(complex(c).real, 8), round(complex(c).imag, 8)))

    kept: List[Tuple[Vector, float]] = []
    for x, r in sorted(points, key=key):
        for i, (y, s) in enumerate(kept):
            if np.linalg.norm(np.asarray(x) - np.asarray(y)) < radius:
                if r < s:
                    kept[i] = (x, r)
                break
        else:
            kept.append((x, r))
    return kept


def grid_newton(F, J, seeds: np.ndarray, accept: Callable[[Vector], bool] = lambda x: True,
                residual_tol: float = RESIDUAL_TOL) -> List[Tuple[Vector, float]]:
    """Batched Newton from every seed, keep accepted converged roots, dedup."""
    X, res = newton_batch(F, J, np.asarray(seeds))
    found = [(x, float(r)) for x, r in zip(X, res) if r < residual_tol and accept(x)]
    return dedup(found)


def real_grid(lo: Sequence[float], hi: Sequence[float], n: int) -> np.ndarray:
    axes = [np.linspace(a, b, n) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def complex_grid(radius: float, n: int, dim: int) -> np.ndarray:
    """Seeds filling the box [-radius, radius]^(2 dim) of C^dim, n points per real axis."""
    axis = np.linspace(-radius, radius, n)
    grid1 = (axis[:, None] + 1j * axis[None, :]).ravel()
    mesh = np.meshgrid(*([grid1] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)
