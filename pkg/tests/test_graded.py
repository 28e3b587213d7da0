import random

import pytest
from hypothesis import given, settings, strategies as st

from relthom.graded import (
    BoundaryPart, Generator, GradedPoly, MissingNumberError, RelClass, chern, dual_class, euler, evaluate_numbers,
    homogeneous_part, invert_unit, mono_degree, parse_monomial, poly_add, poly_mul, pont, relclass_mul, substitute,
    sw, total_class,
)
from relthom.rings import DYADIC, INT, Z2, RingError, int_mod
from relthom.verify import random_relclass, random_unit_poly, series_dual


def P(text, ring, trunc=None):
    return GradedPoly.parse(text, ring, trunc)


# -- documented examples ---------------------------------------------------------------------

def test_poly_add_examples():
    assert poly_add(sw(1), sw(1)).is_zero()
    assert poly_add(pont(1), GradedPoly.zero(DYADIC)) == pont(1)
    assert str(poly_add(chern(1) + chern(2), -chern(1))) == "c2"


def test_poly_add_truncation_is_min():
    a, b = P("w1", Z2, 3), P("w2", Z2, 5)
    assert poly_add(a, b).truncation == 3


def test_poly_mul_examples():
    assert str(poly_mul(sw(1), sw(1))) == "w1^2"
    one_w1 = GradedPoly.const(1, Z2) + sw(1)
    assert str(poly_mul(one_w1, one_w1)) == "1 + w1^2"
    a = P("1 + p1", DYADIC, 8)
    b = P("1 - p1 + p1^2", DYADIC, 8)
    assert poly_mul(a, b) == 1


def test_ring_mismatch():
    with pytest.raises(RingError):
        poly_add(sw(1), chern(1))
    with pytest.raises(RingError):
        poly_mul(sw(1), chern(1))


def test_total_class_examples():
    assert str(total_class("SW", "Source", 2, Z2, 4)) == "1 + w1 + w2"
    assert str(total_class("Chern", "Source", 1, INT, 4)) == "1 + c1"
    assert str(total_class("Pontryagin", "Source", 2, DYADIC, 8)) == "1 + p1 + p2"


def test_invert_unit_examples():
    assert str(invert_unit(P("1 + w1 + w2", Z2, 2))) == "1 + w1 + w1^2 + w2"
    assert str(invert_unit(P("1 + c1 + c2", INT, 4))) == "1 - c1 + c1^2 - c2"
    assert invert_unit(GradedPoly.const(1, INT, 6)) == 1


def test_invert_unit_errors():
    with pytest.raises(RingError):
        invert_unit(P("2 + c1", INT, 4))
    with pytest.raises(ValueError):
        invert_unit(P("1 + c1", INT))


def test_homogeneous_part_examples():
    assert str(homogeneous_part(P("1 + w1 + w1^2 + w2", Z2), 2)) == "w1^2 + w2"
    assert homogeneous_part(pont(1), 8).is_zero()
    inv = invert_unit(total_class("SW", "Source", 3, Z2, 3))
    assert str(homogeneous_part(inv, 3)) == "w1^3 + w3"


def test_substitute_examples():
    w1, w1t = Generator("SW", "Source", 1), Generator("SW", "Target", 1)
    assert substitute(P("w1 + w'1", Z2), {w1: 0, w1t: 0}).is_zero()
    c1, c1t = Generator("Chern", "Source", 1), Generator("Chern", "Target", 1)
    assert str(substitute(P("-c1 + c'1", INT), {c1: chern(1), c1t: 0})) == "-c1"
    w2 = Generator("SW", "Source", 2)
    assert str(substitute(sw(2), {w2: sw(1) * sw(1)})) == "w1^2"


def test_substitute_requires_assignment():
    with pytest.raises(KeyError):
        substitute(P("w1 + w2", Z2), {Generator("SW", "Source", 1): 0})


def test_relclass_examples():
    T = P("w1^2 + w2", Z2)
    a = RelClass(T, BoundaryPart.symbol("alpha", 2, Z2))
    sq = relclass_mul(a, a)
    assert sq.naive == T * T and sq.delta.is_zero()
    zero = RelClass(GradedPoly.zero(Z2), BoundaryPart.symbol("alpha", 2, Z2))
    S = RelClass(P("w2", Z2), BoundaryPart.symbol("beta", 2, Z2))
    prod = relclass_mul(zero, S)
    assert prod.naive.is_zero() and prod.delta.is_zero()
    unit = RelClass(GradedPoly.const(1, Z2))
    prod = relclass_mul(unit, S)
    assert prod.naive == S.naive and prod.delta.is_zero()


def test_relclass_delta_degree_must_match():
    with pytest.raises(ValueError):
        RelClass(P("w2", Z2), BoundaryPart.symbol("a", 3, Z2))


def test_evaluate_numbers_examples():
    assert evaluate_numbers(euler(2), 2, {"e": 1}) == DYADIC.coerce(1)
    assert evaluate_numbers(-pont(1), 4, {"p1": 0}) == DYADIC.coerce(0)
    sfr = P("12*p1^2 - 9*p2", DYADIC)
    a, b = 3, 5
    assert evaluate_numbers(sfr, 8, {"p1^2": a, "p2": b}) == DYADIC.coerce(12 * a - 9 * b)


def test_evaluate_numbers_missing_and_defaults():
    sfr = P("12*p1^2 - 9*p2", DYADIC)
    with pytest.raises(MissingNumberError):
        evaluate_numbers(sfr, 8, {"p1^2": 1})
    assert evaluate_numbers(sfr, 8, {"p1^2": 1}, vanishing_defaults=True) == DYADIC.coerce(12)
    with pytest.raises(ValueError):
        evaluate_numbers(sfr, 4, {"p1^2": 1, "p2": 0})


def test_rendering_is_canonical():
    assert str(P("w3 + w1*w2 + w1^3", Z2)) == "w1^3 + w1*w2 + w3"
    assert str(P("c'1 - c1", INT)) == "-c1 + c'1"
    assert str(P("3/2*p1", DYADIC)) == "3/2*p1"
    assert P(str(P("12*p1^2 - 9*p2", DYADIC)), DYADIC) == P("12*p1^2 - 9*p2", DYADIC)


def test_source_and_target_stay_separate():
    p = P("w1 + w'1", Z2) * P("w1 + w'1", Z2)
    assert str(p) == "w1^2 + w'1^2"
    assert {g.side for g in p.generators()} == {"Source", "Target"}


def test_generator_degrees():
    assert parse_monomial("p2")[0][0].degree == 8
    assert parse_monomial("c3")[0][0].degree == 6
    assert parse_monomial("e", euler_rank=5)[0][0].degree == 5
    with pytest.raises(ValueError):
        Generator("Euler", "Source", 1)


# -- properties -----------------------------------------------------------------------------

RINGS = [Z2, INT, DYADIC, int_mod(24)]


@pytest.mark.parametrize("ring", RINGS, ids=str)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_inverse_property(ring, seed):
    p = random_unit_poly(random.Random(seed), ring, truncation=16)
    prod = p.mul(invert_unit(p))
    for d in range(17):
        part = homogeneous_part(prod, d)
        assert part == (1 if d == 0 else 0)


@pytest.mark.parametrize("family,ring", [("SW", Z2), ("Chern", INT), ("Pontryagin", DYADIC)])
@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_dual_classes_match_series(family, ring, q):
    assert dual_class(family, q, 4, ring) == series_dual(family, q, 4, ring)


def test_classical_dual_classes():
    assert str(dual_class("SW", 1, 3, Z2)) == "w1"
    assert str(dual_class("SW", 2, 3, Z2)) == "w1^2 + w2"
    assert str(dual_class("SW", 3, 3, Z2)) == "w1^3 + w3"
    assert str(dual_class("Chern", 1, 2, INT)) == "-c1"
    assert str(dual_class("Chern", 2, 2, INT)) == "c1^2 - c2"
    assert str(dual_class("Pontryagin", 1, 2, DYADIC)) == "-p1"


def _random_poly(rng, ring, gens, max_deg, terms=4):
    out = {}
    for _ in range(terms):
        mono = {}
        for _ in range(rng.randint(0, 2)):
            g = rng.choice(gens)
            mono[g] = mono.get(g, 0) + 1
        mono = tuple(sorted(mono.items(), key=lambda ge: ge[0].sort_key))
        if mono_degree(mono) <= max_deg:
            out[mono] = rng.randint(-3, 3)
    return GradedPoly(ring, out)


def test_substitute_is_a_homomorphism():
    rng = random.Random(7)
    gens = [Generator("Chern", s, i) for s in ("Source", "Target") for i in (1, 2)]
    trunc = 12
    for _ in range(500):
        p, q = _random_poly(rng, INT, gens, 8), _random_poly(rng, INT, gens, 8)
        # degree-preserving assignment, so truncation commutes with substitution
        assign = {g: homogeneous_part(_random_poly(rng, INT, gens, 4, terms=6), g.degree) for g in gens}
        lhs = substitute(p.mul(q, trunc), assign, trunc)
        rhs = substitute(p, assign, trunc).mul(substitute(q, assign, trunc), trunc)
        assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), q=st.integers(0, 10))
def test_homogeneous_part_grading(seed, q):
    rng = random.Random(seed)
    gens = [Generator("SW", "Source", i) for i in (1, 2, 3)] + [Generator("SW", "Target", 1)]
    p = _random_poly(rng, Z2, gens, 10, terms=8)
    assert all(mono_degree(m) == q for m in homogeneous_part(p, q).terms)


def test_truncation_invariant():
    p = P("1 + w1 + w2 + w1*w2 + w3^2", Z2, 3)
    assert all(mono_degree(m) <= 3 for m in p.terms)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_relclass_product_rules(seed):
    rng = random.Random(seed)
    ring = rng.choice([Z2, INT])
    a, b, c = (random_relclass(rng, ring, 2) for _ in range(3))
    ab = relclass_mul(a, b)
    assert ab.delta.is_zero()
    assert ab.naive == relclass_mul(b, a).naive
    assert relclass_mul(ab, c).naive == relclass_mul(a, relclass_mul(b, c)).naive
    assert a.square().naive == a.naive * a.naive
