"""Coefficient rings: Z/2, Z, Z[1/2] and Z/N.

Elements are plain Python ints for every ring except ``IntDyadic``, whose
elements are :class:`Dyadic` values.  A :class:`RingTag` knows how to
normalize, add and multiply its own elements; polynomials never do
arithmetic on coefficients directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union


class RingError(ValueError):
    """Mismatched rings or an element that does not belong to a ring."""


class IntegralityError(ArithmeticError):
    """A Z[1/2] value was required to be an integer but is not."""


@dataclass(frozen=True)
class Dyadic:
    """The number ``num / 2**exp``, normalized so ``num`` is odd or zero."""

    num: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("dyadic exponent must be non-negative")
        num, exp = self.num, self.exp
        if num == 0:
            exp = 0
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_value(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            raise RingError("booleans are not ring elements")
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator
            exp = den.bit_length() - 1
            if den != 1 << exp:
                raise RingError(f"{value} is not a dyadic rational")
            return cls(value.numerator, exp)
        raise RingError(f"cannot interpret {value!r} as a dyadic rational")

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def is_integer(self) -> bool:
        return self.exp == 0

    def __int__(self):
        if self.exp:
            raise IntegralityError(f"{self} is not an integer")
        return self.num

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) + (other.num << (e - other.exp)), e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.num * other.num, self.exp + other.exp)

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"


Element = Union[int, Dyadic]

_KINDS = ("Z2", "Int", "IntDyadic", "IntMod")


@dataclass(frozen=True)
class RingTag:
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "IntMod" and self.modulus < 1:
            raise RingError("IntMod needs a positive modulus")
        if self.kind == "Z2":
            object.__setattr__(self, "modulus", 2)
        elif self.kind in ("Int", "IntDyadic"):
            object.__setattr__(self, "modulus", 0)

    @classmethod
    def parse(cls, text: str) -> "RingTag":
        """Parse ``Z2``, ``Int``, ``IntDyadic`` or ``IntMod(24)`` (also ``Z24``)."""
        text = text.strip()
        if text in ("Z2", "Int", "IntDyadic"):
            return cls(text)
        if text == "Z":
            return INT
        if text.startswith("IntMod(") and text.endswith(")"):
            return cls("IntMod", int(text[7:-1]))
        if text.startswith("Z") and text[1:].isdigit():
            mod = int(text[1:])
            return Z2 if mod == 2 else cls("IntMod", mod)
        raise RingError(f"cannot parse ring tag {text!r}")

    def __str__(self):
        if self.kind == "IntMod":
            return f"IntMod({self.modulus})"
        return self.kind

    @property
    def is_dyadic(self) -> bool:
        return self.kind == "IntDyadic"

    @property
    def characteristic(self) -> int:
        return self.modulus

    # -- elements ---------------------------------------------------------

    def coerce(self, value) -> Element:
        """Map an int, Fraction, Dyadic or numeric string into this ring."""
        if self.kind == "IntDyadic":
            return Dyadic.from_value(value)
        if isinstance(value, Dyadic):
            value = int(value)
        elif isinstance(value, (str, Fraction)):
            frac = Fraction(value)
            if frac.denominator != 1:
                raise IntegralityError(f"{value} is not an integer")
            value = frac.numerator
        if isinstance(value, bool) or not isinstance(value, int):
            raise RingError(f"cannot interpret {value!r} in {self}")
        if self.modulus:
            return value % self.modulus
        return value

    def zero(self) -> Element:
        return self.coerce(0)

    def one(self) -> Element:
        return self.coerce(1)

    def is_zero(self, a: Element) -> bool:
        return a == self.zero()

    def add(self, a: Element, b: Element) -> Element:
        if self.kind == "IntDyadic":
            return a + b
        return self.coerce(a + b)

    def neg(self, a: Element) -> Element:
        if self.kind == "IntDyadic":
            return -a
        return self.coerce(-a)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        if self.kind == "IntDyadic":
            return a * b
        return self.coerce(a * b)

    def is_unit(self, a: Element) -> bool:
        if self.kind == "Int":
            return a in (1, -1)
        if self.kind == "IntDyadic":
            n = abs(a.num)
            return n != 0 and n & (n - 1) == 0
        return gcd(a, self.modulus) == 1

    def inverse(self, a: Element) -> Element:
        if not self.is_unit(a):
            raise RingError(f"{a} is not a unit in {self}")
        if self.kind == "Int":
            return a
        if self.kind == "IntDyadic":
            # units are +-2^k, k of either sign
            sign = 1 if a.num > 0 else -1
            if a.exp:
                return Dyadic(sign << a.exp)
            return Dyadic(sign, abs(a.num).bit_length() - 1)
        return pow(a, -1, self.modulus)

    def to_int(self, a: Element) -> int:
        """Integer representative; raises IntegralityError for proper dyadics."""
        if isinstance(a, Dyadic):
            return int(a)
        return a

    def render(self, a: Element) -> str:
        return str(a)


Z2 = RingTag("Z2")
INT = RingTag("Int")
DYADIC = RingTag("IntDyadic")


def int_mod(modulus: int) -> RingTag:
    return RingTag("IntMod", modulus)


def convert(value: Element, source: RingTag, target: RingTag) -> Element:
    """Move a value between rings along Z[1/2] -> Z -> Z/N.

    Z[1/2] to Z (or Z/N) requires integrality.  Z/N to Z/M requires M | N.
    """
    if source == target:
        return value
    if source.modulus:
        if not target.modulus or source.modulus % target.modulus:
            raise RingError(f"no ring map {source} -> {target}")
        return value % target.modulus
    if isinstance(value, Dyadic):
        if target.kind == "IntDyadic":
            return value
        if not value.is_integer():
            raise IntegralityError(f"{value} is not integral; cannot map to {target}")
        value = value.num
    return target.coerce(value)
