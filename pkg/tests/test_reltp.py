import json
import random

import pytest
from hypothesis import given, strategies as st

from relthom.catalog import SingTypeId
from relthom.rings import DYADIC, IntegralityError, int_mod
from relthom.reltp import (
    ExtensionProfile, ParityError, PrescribedProfile, ProfileError, frame_change, hirzebruch_defect, load_profile,
    map_compare, naive_value, predict_count, riemann_hurwitz_extension, saeki_szucs_takase, scenario_from_dict,
    smale_from_singularities, takase_T,
)

A1C = SingTypeId("A1", "Complex")
A1F = SingTypeId("A1", "Function")
A1R = SingTypeId("A1", "RealUnoriented")
A2O = SingTypeId("A2", "RealOriented")
S2O = SingTypeId("Sigma2", "RealOriented")


# -- predictions --------------------------------------------------------------------

@pytest.mark.parametrize("deg", [1, 2, 3, 4, 7])
def test_riemann_hurwitz(deg):
    pre = PrescribedProfile(1, 1, "Complex", "S1", "Sphere", invariants={"d_1": 0})
    pred = predict_count(A1C, pre, riemann_hurwitz_extension(1, 1, deg))
    assert pred.case == "ii"
    assert pred.total == deg - 1
    assert pred.naive == -1 + deg and pred.correction == 0


def test_riemann_hurwitz_frame_difference_enters_twice():
    pre = PrescribedProfile(1, 1, "Complex", "S1", "Sphere", invariants={"d_1": 2})
    assert predict_count(A1C, pre, riemann_hurwitz_extension(1, 1, 3)).total == 2 + 4


@pytest.mark.parametrize("chi", [-1, 0, 1, 2])
def test_poincare_hopf(chi):
    pre = PrescribedProfile(2, 1, "Function", boundary_kind="NullCobordant")
    pred = predict_count(A1F, pre, ExtensionProfile(euler=chi, rel_numbers={"e": chi}))
    assert pred.total == chi and pred.case == "iv"


def test_standard_sphere_has_no_cusps():
    pre = PrescribedProfile(4, 5, "RealOriented", "S3", "Sphere", invariants={"Omega": 0})
    pred = predict_count(A2O, pre, ExtensionProfile(rel_numbers={"p1": 0}))
    assert pred.case == "vii" and pred.total == 0


@pytest.mark.parametrize("sigma,tau,a2", [(0, 0, 0), (1, 1, 4), (2, 0, 2), (-1, 1, 6), (3, 1, 0)])
def test_case_viii_matches_definition(sigma, tau, a2):
    i_a = saeki_szucs_takase(sigma, tau, a2)
    p1 = 3 * sigma + 5  # any spin p1-number; the defect absorbs it
    delta = hirzebruch_defect(p1, sigma)
    pre = PrescribedProfile(4, 5, "RealOriented", "V", "Any", tau=tau, invariants={"i_a": i_a, "delta": delta})
    pred = predict_count(A2O, pre, ExtensionProfile(signature=sigma, rel_numbers={"p1": p1}))
    assert pred.case == "viii"
    assert pred.total == -p1 + delta + 3 * tau + 2 * i_a
    assert pred.total == a2


def test_case_x_lives_mod_24():
    pre = PrescribedProfile(4, 4, "RealOriented", "V", "Any", invariants={"T": 23, "mu": 15, "delta": 1})
    pred = predict_count(S2O, pre, ExtensionProfile(rel_numbers={"p1": 0}))
    z24 = int_mod(24)
    assert pred.ring == z24 and pred.total == z24.coerce(46 + 45 + 1)


def test_decomposition():
    pre = PrescribedProfile(4, 5, "RealOriented", "S3", "Sphere", invariants={"Omega": 3})
    ext = ExtensionProfile(rel_numbers={"p1": -4})
    pred = predict_count(A2O, pre, ext)
    naive, _ = naive_value(A2O, 4, 5, ext, False)
    assert naive == DYADIC.coerce(4)
    assert pred.total - pred.correction == pred.naive == 4


def test_half_integer_total_is_rejected():
    pre = PrescribedProfile(4, 5, "RealOriented", "S3", "Sphere", invariants={"Omega": 1})
    with pytest.raises(IntegralityError):
        predict_count(A2O, pre, ExtensionProfile(rel_numbers={"p1": "3/2"}, ring=DYADIC))


def test_mod2_row():
    pre = PrescribedProfile(2, 3, "RealUnoriented", "S1", "Sphere")
    pred = predict_count(A1R, pre, ExtensionProfile(rel_numbers={"w1^2": 1, "w2": 0}))
    assert pred.total == 1


def test_missing_inputs():
    pre = PrescribedProfile(4, 4, "RealOriented", "S3", "Sphere")
    with pytest.raises(KeyError):
        predict_count(S2O, pre, ExtensionProfile(rel_numbers={"p1": 0}))
    pre = PrescribedProfile(4, 4, "RealOriented", "S3", "Sphere", invariants={"Omega_j": 0})
    with pytest.raises(LookupError):
        predict_count(S2O, pre, ExtensionProfile(rel_numbers={}))


def test_prediction_dict():
    pre = PrescribedProfile(1, 1, "Complex", "S1", "Sphere", invariants={"d_1": 0})
    d = predict_count(A1C, pre, riemann_hurwitz_extension(1, 1, 5)).to_dict()
    assert d == {"type": "A1", "category": "Complex", "case": "ii", "naive": 4, "correction": 0, "total": 4,
                 "ring": "Int"}


# -- profile validation ----------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    {"invariants": {"bogus": 1}},
    {"invariants": {"tau": 1}},
    {"invariants": {"mu": 16}},
    {"invariants": {"T": -1}},
    {"invariants": {"Omega": 1.5}},
    {"tau": -1},
])
def test_prescribed_profile_rejects(kwargs):
    with pytest.raises(ProfileError):
        PrescribedProfile(4, 4, "RealOriented", **kwargs)


def test_extension_degree_check():
    pre = PrescribedProfile(4, 5, "RealOriented", "S3", "Sphere", invariants={"Omega": 0})
    with pytest.raises(ProfileError):
        predict_count(A2O, pre, ExtensionProfile(rel_numbers={"p1": 0, "p2": 1}))


def _doc():
    return {"type": "A1", "category": "Complex", "m": 1, "n": 1,
            "prescribed": {"boundary_kind": "Sphere", "invariants": {"d_1": 0}},
            "extension": {"ring": "Int", "rel_numbers": {"c1": 1, "c'1": 3}}}


def test_scenario_from_dict():
    tid, pre, ext, full = scenario_from_dict(_doc())
    assert tid == A1C and full is None
    assert predict_count(tid, pre, ext, full).total == 2


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(extra=1),
    lambda d: d["prescribed"].update(colour="red"),
    lambda d: d["extension"].update(genus=2),
    lambda d: d.pop("m"),
    lambda d: d.update(m="1"),
    lambda d: d.update(type="A9"),
    lambda d: d["extension"]["rel_numbers"].update(c1=1.0),
    lambda d: d.update(full_target="yes"),
])
def test_scenario_schema_failures(mutate):
    doc = _doc()
    mutate(doc)
    with pytest.raises(ProfileError):
        scenario_from_dict(doc)


def test_load_profile(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps(_doc()))
    assert load_profile(p)[0] == A1C
    with pytest.raises(ProfileError):
        load_profile(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ProfileError):
        load_profile(tmp_path / "bad.json")


# -- ledger -------------------------------------------------------------------------

def test_frame_change_examples():
    assert frame_change([3, 1], 0, 0, 1, 5) == [3, 1]
    assert frame_change(4, 2, 7, 1, 0) == [6]
    assert frame_change([1, 2], [1, 1], [0, 2], 2, -1) == [3, 2]


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=4), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-3, 3), st.integers(-3, 3))
def test_frame_change_round_trip(alpha, ds, dt, a, b):
    assert frame_change(frame_change(alpha, ds, dt, a, b), -ds, -dt, a, b) == alpha


def test_map_compare_examples():
    assert map_compare(0, 0, 1) == 0
    assert map_compare(5, 5, 1) == 0
    assert map_compare(3, 3, -1) == 6


@pytest.mark.parametrize("d", range(-10, 11))
def test_regular_homotopy_invariance(d):
    assert map_compare(d, d, 1) == 0


def test_hirzebruch_defect():
    assert hirzebruch_defect(0, 0) == 0
    assert hirzebruch_defect(3, 1) == 0
    assert hirzebruch_defect(0, -1) == 3


def test_saeki_szucs_takase():
    assert saeki_szucs_takase(0, 0, 0) == 0
    assert saeki_szucs_takase(1, 1, 4) == 2
    assert saeki_szucs_takase(0, 1, 1) == -1
    with pytest.raises(ParityError):
        saeki_szucs_takase(0, 0, 1)


def test_takase_T():
    assert takase_T(0, 0, 0) == 0
    assert takase_T(1, 1, 2) == 1
    assert takase_T(0, 16, 0) == 0
    with pytest.raises(ParityError):
        takase_T(1, 0, 0)


def test_smale_examples():
    assert smale_from_singularities(1, 0, 0) == 0
    assert smale_from_singularities(1, 0, 4) == 2
    # p1 = -2 puts 2 cusps on the naive side, so two observed cusps leave nothing for Omega
    assert smale_from_singularities(1, -2, 2) == 0
    assert smale_from_singularities(1, -2, 6) == 2


def test_smale_rejects_odd_bracket():
    with pytest.raises(ParityError):
        smale_from_singularities(1, 0, 3)
    with pytest.raises(ParityError):
        smale_from_singularities(2, {"p1^2": 0, "p2": 0}, 4)


def test_smale_round_trip_grid():
    rng = random.Random(3)
    for k, keys in ((1, ["p1"]), (2, ["p1^2", "p2"]), (3, ["p1^3", "p1*p2", "p3"])):
        m, n = 4 * k, 6 * k - 1
        for omega in range(-6, 7):
            numbers = {key: rng.randint(-8, 8) for key in keys}
            pre = PrescribedProfile(m, n, "RealOriented", "S", "Sphere", invariants={"Omega": omega})
            count = predict_count(A2O, pre, ExtensionProfile(rel_numbers=numbers)).total
            arg = numbers["p1"] if k == 1 else numbers
            assert smale_from_singularities(k, arg, int(count)) == omega
