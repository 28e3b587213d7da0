"""Singularity reports with a fixed JSON field order."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Shared solver tolerances.
NEWTON_TOL = 1e-12
RESIDUAL_TOL = 1e-10
DEDUP_RADIUS = 1e-6
CLUSTER_RADIUS = 1e-7


class SolverError(RuntimeError):
    """A numeric pipeline could not certify its result (non-generic or ill-posed input)."""


@dataclass(frozen=True)
class SingularPoint:
    coords: Tuple[complex, ...]
    residual: float
    multiplicity: int = 1
    sign: int = 1

    def to_dict(self) -> dict:
        return {
            "coords": [_num(c) for c in self.coords],
            "residual": _float(self.residual),
            "multiplicity": self.multiplicity,
            "sign": self.sign,
        }


@dataclass
class SingularityReport:
    kind: str
    points: List[SingularPoint] = field(default_factory=list)
    count: int = 0
    modulus: Optional[int] = None
    prot_values: List[int] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def reduced_count(self) -> int:
        return self.count % self.modulus if self.modulus else self.count

    @property
    def max_residual(self) -> float:
        return max((p.residual for p in self.points), default=0.0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "count": self.count,
            "modulus": self.modulus,
            "points": [p.to_dict() for p in self.points],
            "prot_values": list(self.prot_values),
            "diagnostics": {k: self.diagnostics[k] for k in sorted(self.diagnostics)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _float(x: float) -> float:
    # 12 significant digits keeps reports byte-stable across BLAS builds
    return float(f"{x:.12g}")


def _num(c):
    c = complex(c)
    if c.imag == 0:
        return _float(c.real)
    return [_float(c.real), _float(c.imag)]


def sort_points(points: Sequence[SingularPoint]) -> List[SingularPoint]:
    def key(p):
        return tuple(v for c in p.coords for v in (round(complex(c).real, 9), round(complex(c).imag, 9)))
    return sorted(points, key=key)
