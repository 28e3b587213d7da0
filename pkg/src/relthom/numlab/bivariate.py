"""Bivariate polynomials with exact rational coefficients and a float/complex view."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P


class BiPoly:
    """sum c[i, j] x^i y^j with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Tuple[int, int], object]):
        clean = {}
        for (i, j), c in coeffs.items():
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        self.coeffs: Dict[Tuple[int, int], Fraction] = {k: v for k, v in clean.items() if v}

    @classmethod
    def from_table(cls, table: Mapping[str, object]) -> "BiPoly":
        """Parse {"i,j": "3/2", ...} as used in preset files."""
        out = {}
        for key, value in table.items():
            i, j = (int(s) for s in key.split(","))
            out[(i, j)] = Fraction(str(value))
        return cls(out)

    def to_table(self) -> Dict[str, str]:
        return {f"{i},{j}": str(c) for (i, j), c in sorted(self.coeffs.items())}

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + a * b
        return BiPoly(out)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BiPoly({self.to_table()})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def deg_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def dx(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i})

    def dy(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j})

    def array(self) -> np.ndarray:
        arr = np.zeros((max(self.deg_x(), 0) + 1, max(self.deg_y(), 0) + 1))
        for (i, j), c in self.coeffs.items():
            arr[i, j] = float(c)
        return arr

    def __call__(self, x, y):
        return P.polyval2d(x, y, self.array())

    def y_coeffs_at(self, x0) -> List:
        """Coefficients (ascending in y) after substituting x = x0 (exact if x0 is a Fraction)."""
        out = [0] * (self.deg_y() + 1)
        for (i, j), c in self.coeffs.items():
            out[j] += c * x0 ** i
        return out

    def x_coeffs_at(self, y0) -> List:
        out = [0] * (self.deg_x() + 1)
        for (i, j), c in self.coeffs.items():
            out[i] += c * y0 ** j
        return out


def x_poly(coeffs: Sequence[object]) -> BiPoly:
    return BiPoly({(i, 0): c for i, c in enumerate(coeffs)})


def y_poly(coeffs: Sequence[object]) -> BiPoly:
    return BiPoly({(0, j): c for j, c in enumerate(coeffs)})


def exact_det(rows: List[List[Fraction]]) -> Fraction:
    """Determinant by Fraction Gaussian elimination."""
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def sylvester_matrix(f: Sequence, g: Sequence, deg_f: int, deg_g: int) -> List[List]:
    """Sylvester matrix of f, g given ascending coefficients and formal degrees."""
    size = deg_f + deg_g
    fd = [f[deg_f - k] if deg_f - k < len(f) else 0 for k in range(deg_f + 1)]  # descending
    gd = [g[deg_g - k] if deg_g - k < len(g) else 0 for k in range(deg_g + 1)]
    rows = []
    for r in range(deg_g):
        rows.append([0] * r + fd + [0] * (size - r - deg_f - 1))
    for r in range(deg_f):
        rows.append([0] * r + gd + [0] * (size - r - deg_g - 1))
    return rows


def _interpolate(xs: List[Fraction], ys: List[Fraction]) -> List[Fraction]:
    """Exact Newton divided differences, returned as ascending monomial coefficients."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # out = out * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + out[:-1]
        out = [s - xs[k] * o for s, o in zip(shifted, out)]
        out[0] += coef[k]
    return out


def resultant_y(a: BiPoly, b: BiPoly) -> List[Fraction]:
    """Res_y(a, b) as exact ascending coefficients in x.

    Evaluated at enough integer points to pin down the degree bound
    deg_x(a) deg_y(b) + deg_x(b) deg_y(a), then interpolated exactly.
    """
    da, db = a.deg_y(), b.deg_y()
    if da < 0 or db < 0:
        return [Fraction(0)]
    if da == 0 and db == 0:
        raise ValueError("both polynomials are free of y")
    bound = max(a.deg_x(), 0) * db + max(b.deg_x(), 0) * da
    xs = [Fraction(k) for k in range(bound + 1)]
    ys = [exact_det(sylvester_matrix(a.y_coeffs_at(x), b.y_coeffs_at(x), da, db)) for x in xs]
    coeffs = _interpolate(xs, ys)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
