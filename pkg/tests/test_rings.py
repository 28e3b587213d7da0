from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from relthom.rings import DYADIC, INT, Z2, Dyadic, IntegralityError, RingError, RingTag, convert, int_mod

RINGS = [Z2, INT, DYADIC, int_mod(24), int_mod(16)]


def elements(ring):
    if ring.kind == "IntDyadic":
        return st.builds(lambda n, e: Dyadic(n, e), st.integers(-50, 50), st.integers(0, 5))
    return st.integers(-100, 100).map(ring.coerce)


def test_dyadic_normalizes():
    assert Dyadic(6, 2) == Dyadic(3, 1)
    assert Dyadic(0, 4) == Dyadic(0, 0)
    assert str(Dyadic(3, 1)) == "3/2"
    assert Dyadic.from_value("-5/4") == Dyadic(-5, 2)
    with pytest.raises(RingError):
        Dyadic.from_value(Fraction(1, 3))


def test_intmod_range():
    r = int_mod(24)
    assert r.coerce(-1) == 23
    assert all(0 <= r.coerce(k) < 24 for k in range(-60, 60))


def test_parse_tags():
    assert RingTag.parse("IntMod(24)") == int_mod(24)
    assert RingTag.parse("Z24") == int_mod(24)
    assert RingTag.parse("Z2") == Z2
    assert str(int_mod(16)) == "IntMod(16)"
    with pytest.raises(RingError):
        RingTag.parse("Q")


def test_units_and_inverses():
    assert DYADIC.inverse(Dyadic(1, 3)) == Dyadic(8)
    assert DYADIC.inverse(Dyadic(-4)) == Dyadic(-1, 2)
    assert not DYADIC.is_unit(Dyadic(3))
    assert int_mod(24).inverse(5) == 5
    with pytest.raises(RingError):
        INT.inverse(2)


def test_convert_chain():
    assert convert(Dyadic(6), DYADIC, INT) == 6
    assert convert(Dyadic(30), DYADIC, int_mod(24)) == 6
    assert convert(7, INT, Z2) == 1
    with pytest.raises(IntegralityError):
        convert(Dyadic(1, 1), DYADIC, INT)
    with pytest.raises(RingError):
        convert(3, int_mod(24), int_mod(16))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_ring_axioms(ring):
    @given(elements(ring), elements(ring), elements(ring))
    def check(a, b, c):
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.add(a, ring.neg(a)) == ring.zero()
        assert ring.mul(a, ring.one()) == a

    check()
