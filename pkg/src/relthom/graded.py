"""Sparse graded polynomials in characteristic-class generators.

Generators are Stiefel-Whitney (``w``), Pontryagin (``p``), Chern (``c``)
and Euler (``e``) classes, each living on the source or the target side of a
map; target classes render with a prime (``w'2``).  Monomials are tuples of
``(generator, exponent)`` pairs sorted by ``(side, family, index)``.

Canonical rendering orders terms by degree, then lexicographically with
higher powers of earlier generators first::

    >>> w1, w2 = sw(1), sw(2)
    >>> str(w1 * w1 + w2)
    'w1^2 + w2'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Tuple, Union

from .rings import DYADIC, INT, Z2, Element, RingError, RingTag

FAMILIES = ("SW", "Pontryagin", "Chern", "Euler")
SIDES = ("Source", "Target")
_PREFIX = {"SW": "w", "Pontryagin": "p", "Chern": "c", "Euler": "e"}
_FAMILY_OF_PREFIX = {v: k for k, v in _PREFIX.items()}
_DEGREE_UNIT = {"SW": 1, "Pontryagin": 4, "Chern": 2}


class MissingNumberError(KeyError):
    """A characteristic number needed for evaluation was not supplied."""


@dataclass(frozen=True)
class Generator:
    family: str
    side: str = "Source"
    index: int = 1
    rank: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.side not in SIDES:
            raise ValueError(f"unknown side {self.side!r}")
        if self.family == "Euler":
            if self.rank is None or self.rank < 1:
                raise ValueError("the Euler generator needs a declared rank")
            object.__setattr__(self, "index", 1)
        else:
            if self.index < 1:
                raise ValueError("generator index must be positive")
            object.__setattr__(self, "rank", None)

    @property
    def degree(self) -> int:
        if self.family == "Euler":
            return self.rank
        return _DEGREE_UNIT[self.family] * self.index

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (SIDES.index(self.side), FAMILIES.index(self.family), self.index)

    @property
    def name(self) -> str:
        prime = "'" if self.side == "Target" else ""
        if self.family == "Euler":
            return "e" + prime
        return f"{_PREFIX[self.family]}{prime}{self.index}"

    def __str__(self):
        return self.name


def sw(i: int, side: str = "Source") -> "GradedPoly":
    return GradedPoly.generator(Generator("SW", side, i), Z2)


def pont(i: int, side: str = "Source", ring: RingTag = DYADIC) -> "GradedPoly":
    return GradedPoly.generator(Generator("Pontryagin", side, i), ring)


def chern(i: int, side: str = "Source", ring: RingTag = INT) -> "GradedPoly":
    return GradedPoly.generator(Generator("Chern", side, i), ring)


def euler(rank: int, side: str = "Source", ring: RingTag = DYADIC) -> "GradedPoly":
    return GradedPoly.generator(Generator("Euler", side, rank=rank), ring)


# -- monomials -------------------------------------------------------------

Monomial = Tuple[Tuple[Generator, int], ...]
ONE: Monomial = ()


def mono_degree(mono: Monomial) -> int:
    return sum(g.degree * e for g, e in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: Dict[Generator, int] = dict(a)
    for g, e in b:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items(), key=lambda ge: ge[0].sort_key))


def mono_key(mono: Monomial):
    """Ordering key: by degree, then earlier generators with higher powers first."""
    return (mono_degree(mono), tuple((g.sort_key, -e) for g, e in mono))


def mono_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in mono)


_GEN_RE = re.compile(r"^([wpce])('?)(\d*)(?:\^(\d+))?$")


def parse_monomial(text: str, euler_rank: Optional[int] = None) -> Monomial:
    """Inverse of :func:`mono_str` (``"w1^2*w'2"``)."""
    text = text.replace(" ", "")
    if text == "1":
        return ONE
    mono: Monomial = ONE
    for factor in text.split("*"):
        m = _GEN_RE.match(factor)
        if not m:
            raise ValueError(f"cannot parse generator {factor!r}")
        prefix, prime, idx, power = m.groups()
        family = _FAMILY_OF_PREFIX[prefix]
        side = "Target" if prime else "Source"
        if family == "Euler":
            if euler_rank is None:
                raise ValueError("parsing 'e' needs an Euler rank")
            gen = Generator("Euler", side, rank=euler_rank)
        else:
            if not idx:
                raise ValueError(f"generator {factor!r} has no index")
            gen = Generator(family, side, int(idx))
        mono = mono_mul(mono, ((gen, int(power) if power else 1),))
    return mono


# -- polynomials -------------------------------------------------------------


def _min_trunc(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class GradedPoly:
    """Immutable sparse polynomial over a :class:`RingTag`.

    ``truncation`` (optional) is the largest degree kept; terms above it are
    dropped on construction.  Zero coefficients are never stored.
    """

    __slots__ = ("ring", "truncation", "_terms")

    def __init__(
        self,
        ring: RingTag,
        terms: Optional[Mapping[Monomial, object]] = None,
        truncation: Optional[int] = None,
    ):
        clean: Dict[Monomial, Element] = {}
        for mono, c in (terms or {}).items():
            if truncation is not None and mono_degree(mono) > truncation:
                continue
            c = ring.coerce(c)
            if c in clean:
                c = ring.add(clean[mono], c)
            if ring.is_zero(c):
                clean.pop(mono, None)
            else:
                clean[mono] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedPoly is immutable")

    # constructors
    @classmethod
    def zero(cls, ring: RingTag, truncation: Optional[int] = None) -> "GradedPoly":
        return cls(ring, {}, truncation)

    @classmethod
    def const(cls, value, ring: RingTag, truncation: Optional[int] = None) -> "GradedPoly":
        return cls(ring, {ONE: value}, truncation)

    @classmethod
    def generator(cls, gen: Generator, ring: RingTag, truncation: Optional[int] = None) -> "GradedPoly":
        return cls(ring, {((gen, 1),): 1}, truncation)

    @classmethod
    def parse(cls, text: str, ring: RingTag, truncation: Optional[int] = None,
              euler_rank: Optional[int] = None) -> "GradedPoly":
        """Parse a canonical rendering such as ``"12*p1^2 - 9*p2"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        terms: Dict[Monomial, Element] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            coeff = ring.one()
            mono: Monomial = ONE
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff = ring.mul(coeff, ring.coerce(factor))
                else:
                    mono = mono_mul(mono, parse_monomial(factor, euler_rank))
            if sign == "-":
                coeff = ring.neg(coeff)
            terms[mono] = ring.add(terms.get(mono, ring.zero()), coeff)
        return cls(ring, terms, truncation)

    # accessors
    @property
    def terms(self) -> Mapping[Monomial, Element]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set:
        return {mono_degree(m) for m in self._terms}

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def constant_term(self) -> Element:
        return self._terms.get(ONE, self.ring.zero())

    def coefficient(self, mono: Union[Monomial, str]) -> Element:
        if isinstance(mono, str):
            mono = parse_monomial(mono, self._euler_rank())
        return self._terms.get(mono, self.ring.zero())

    def generators(self) -> set:
        return {g for mono in self._terms for g, _ in mono}

    def _euler_rank(self) -> Optional[int]:
        for g in self.generators():
            if g.family == "Euler":
                return g.rank
        return None

    def with_truncation(self, truncation: Optional[int]) -> "GradedPoly":
        return GradedPoly(self.ring, self._terms, truncation)

    # arithmetic
    def _check(self, other: "GradedPoly") -> None:
        if not isinstance(other, GradedPoly):
            raise TypeError(f"expected GradedPoly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            return other
        return GradedPoly.const(other, self.ring)

    def __add__(self, other) -> "GradedPoly":
        other = self._lift(other)
        self._check(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = self.ring.add(terms[mono], c) if mono in terms else c
        return GradedPoly(self.ring, terms, _min_trunc(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.ring, {m: self.ring.neg(c) for m, c in self._terms.items()}, self.truncation)

    def __sub__(self, other) -> "GradedPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "GradedPoly":
        return self._lift(other) - self

    def scale(self, value) -> "GradedPoly":
        k = self.ring.coerce(value)
        return GradedPoly(self.ring, {m: self.ring.mul(k, c) for m, c in self._terms.items()}, self.truncation)

    def mul(self, other: "GradedPoly", truncation: Optional[int] = None) -> "GradedPoly":
        self._check(other)
        trunc = _min_trunc(_min_trunc(self.truncation, other.truncation), truncation)
        ring = self.ring
        terms: Dict[Monomial, Element] = {}
        for ma, ca in self._terms.items():
            da = mono_degree(ma)
            for mb, cb in other._terms.items():
                if trunc is not None and da + mono_degree(mb) > trunc:
                    continue
                mono = mono_mul(ma, mb)
                c = ring.mul(ca, cb)
                terms[mono] = ring.add(terms[mono], c) if mono in terms else c
        return GradedPoly(ring, terms, trunc)

    def __mul__(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "GradedPoly":
        return self.scale(other)

    def __pow__(self, k: int) -> "GradedPoly":
        if k < 0:
            raise ValueError("use invert_unit for negative powers")
        out = GradedPoly.const(1, self.ring, self.truncation)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int):
            return self == GradedPoly.const(other, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    # rendering
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: mono_key(mc[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            text = str(c)
            negative = text.startswith("-")
            mag = text.lstrip("-")
            if not mono:
                body = mag
            elif mag == "1":
                body = mono_str(mono)
            else:
                body = f"{mag}*{mono_str(mono)}"
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"GradedPoly({str(self)!r}, ring={self.ring}, truncation={self.truncation})"


# -- operations --------------------------------------------------------------


def poly_add(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    return a + b


def poly_mul(a: GradedPoly, b: GradedPoly, truncation: Optional[int] = None) -> GradedPoly:
    return a.mul(b, truncation)


def total_class(family: str, side: str, rank: int, ring: RingTag,
                truncation: Optional[int] = None) -> GradedPoly:
    """``1 + g_1 + ... + g_rank`` for the given family."""
    if rank < 1:
        raise ValueError("rank must be positive")
    if family == "Euler":
        raise ValueError("the Euler class has no total class")
    terms = {ONE: 1}
    for i in range(1, rank + 1):
        terms[((Generator(family, side, i), 1),)] = 1
    return GradedPoly(ring, terms, truncation)


def homogeneous_part(p: GradedPoly, q: int) -> GradedPoly:
    return GradedPoly(p.ring, {m: c for m, c in p.terms.items() if mono_degree(m) == q}, p.truncation)


def invert_unit(p: GradedPoly, truncation: Optional[int] = None) -> GradedPoly:
    """Multiplicative inverse up to the truncation degree.

    Solves ``p * q = 1`` degree by degree:
    ``q_d = -c0^{-1} * sum_{i=1..d} p_i q_{d-i}``.
    """
    trunc = _min_trunc(p.truncation, truncation)
    if trunc is None:
        raise ValueError("invert_unit needs a truncation degree")
    ring = p.ring
    c0 = p.constant_term()
    if not ring.is_unit(c0):
        raise RingError(f"constant term {c0} is not a unit in {ring}")
    inv0 = ring.inverse(c0)
    parts = {d: homogeneous_part(p, d) for d in p.degrees() if 0 < d <= trunc}
    q = {0: GradedPoly.const(inv0, ring)}
    for d in range(1, trunc + 1):
        acc = GradedPoly.zero(ring)
        for i, pi in parts.items():
            if i <= d and not q[d - i].is_zero():
                acc = acc + pi * q[d - i]
        q[d] = acc.scale(ring.neg(inv0))
    out = GradedPoly.zero(ring, trunc)
    for part in q.values():
        out = out + part
    return out.with_truncation(trunc)


def dual_class(family: str, q: int, rank: int, ring: RingTag, side: str = "Source") -> GradedPoly:
    """The degree-``q`` component (in index units) of the inverse total class.

    ``dual_class("SW", 2, r, Z2)`` is ``w1^2 + w2``; ``dual_class("Chern", 1, ...)``
    is ``-c1``.
    """
    unit = _DEGREE_UNIT[family]
    deg = unit * q
    inv = invert_unit(total_class(family, side, max(rank, 1), ring, deg))
    return homogeneous_part(inv, deg).with_truncation(None)


def substitute(p: GradedPoly, assignment: Mapping[Generator, object],
               truncation: Optional[int] = None, keep_unassigned: bool = False) -> GradedPoly:
    """Formal substitution ``g -> assignment[g]``.

    Values may be polynomials over ``p.ring`` or constants.  Unassigned
    generators raise ``KeyError`` unless ``keep_unassigned`` is set.
    """
    ring = p.ring
    trunc = _min_trunc(p.truncation, truncation)
    images: Dict[Generator, GradedPoly] = {}
    for g in p.generators():
        if g in assignment:
            v = assignment[g]
            if not isinstance(v, GradedPoly):
                v = GradedPoly.const(v, ring)
            if v.ring != ring:
                raise RingError(f"assignment for {g} lives in {v.ring}, not {ring}")
            images[g] = v
        elif keep_unassigned:
            images[g] = GradedPoly.generator(g, ring)
        else:
            raise KeyError(f"generator {g} is not assigned")
    powers: Dict[Tuple[Generator, int], GradedPoly] = {}

    def power(g: Generator, e: int) -> GradedPoly:
        key = (g, e)
        if key not in powers:
            powers[key] = images[g] if e == 1 else power(g, e - 1).mul(images[g], trunc)
        return powers[key]

    out = GradedPoly.zero(ring, trunc)
    for mono, c in p.terms.items():
        term = GradedPoly.const(c, ring, trunc)
        for g, e in mono:
            term = term.mul(power(g, e), trunc)
        out = out + term
    return out


def evaluate_numbers(p: GradedPoly, dim: int, numbers: Mapping[Union[Monomial, str], object],
                     vanishing_defaults: bool = False) -> Element:
    """Pair a degree-``dim`` polynomial with a fundamental class.

    ``numbers`` maps each top-degree monomial (or its canonical string) to its
    characteristic number.
    """
    extra = p.degrees() - {dim}
    if extra:
        raise ValueError(f"polynomial {p} is not homogeneous of degree {dim}")
    ring = p.ring
    table = {}
    for key, value in numbers.items():
        name = key if isinstance(key, str) else mono_str(key)
        table[name.replace(" ", "")] = ring.coerce(value)
    total = ring.zero()
    for mono, c in p.terms.items():
        name = mono_str(mono)
        if name in table:
            total = ring.add(total, ring.mul(c, table[name]))
        elif not vanishing_defaults:
            raise MissingNumberError(f"no characteristic number supplied for {name}")
    return total


# -- relative classes --------------------------------------------------------


@dataclass(frozen=True)
class BoundaryPart:
    """Formal linear combination of connecting-homomorphism images ``delta(label)``."""

    ring: RingTag
    degree: int
    labels: Tuple[Tuple[str, Element], ...] = ()

    @classmethod
    def symbol(cls, label: str, degree: int, ring: RingTag, coeff=1) -> "BoundaryPart":
        c = ring.coerce(coeff)
        return cls(ring, degree, () if ring.is_zero(c) else ((label, c),))

    def is_zero(self) -> bool:
        return not self.labels

    def __add__(self, other: "BoundaryPart") -> "BoundaryPart":
        if other.ring != self.ring:
            raise RingError("ring mismatch in boundary parts")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise ValueError("cannot add boundary parts of different degree")
        acc = dict(self.labels)
        for k, c in other.labels:
            acc[k] = self.ring.add(acc.get(k, self.ring.zero()), c)
        items = tuple(sorted((k, c) for k, c in acc.items() if not self.ring.is_zero(c)))
        return BoundaryPart(self.ring, self.degree, items)

    def __str__(self):
        if not self.labels:
            return "0"
        return " + ".join(f"d({k})" if str(c) == "1" else f"{c}*d({k})" for k, c in self.labels)


@dataclass(frozen=True)
class RelClass:
    """A relative class split as naive substitution plus a boundary part.

    Any product of two relative classes has vanishing boundary part, since
    ``u . delta(v) = 0``.
    """

    naive: GradedPoly
    delta: BoundaryPart = field(default=None)

    def __post_init__(self):
        if self.delta is None:
            object.__setattr__(self, "delta", BoundaryPart(self.naive.ring, 0))
        if self.delta.ring != self.naive.ring:
            raise RingError("naive and boundary parts must share a ring")
        if not self.delta.is_zero() and not self.naive.is_zero():
            degs = self.naive.degrees()
            if degs != {self.delta.degree}:
                raise ValueError("boundary part degree must match the naive part degree")

    @property
    def ring(self) -> RingTag:
        return self.naive.ring

    def __add__(self, other: "RelClass") -> "RelClass":
        return RelClass(self.naive + other.naive, self.delta + other.delta)

    def __mul__(self, other: "RelClass") -> "RelClass":
        return relclass_mul(self, other)

    def square(self) -> "RelClass":
        return relclass_mul(self, self)

    def __str__(self):
        if self.delta.is_zero():
            return str(self.naive)
        return f"{self.naive} + {self.delta}"


def relclass_mul(a: RelClass, b: RelClass, truncation: Optional[int] = None) -> RelClass:
    if a.ring != b.ring:
        raise RingError(f"ring mismatch: {a.ring} vs {b.ring}")
    naive = a.naive.mul(b.naive, truncation)
    return RelClass(naive, BoundaryPart(a.ring, 0))

