from fractions import Fraction

import pytest

from goldman import decide
from goldman.errors import DomainError
from goldman.fuchsian import default_rep, pants_rep_from_traces
from goldman.words import FormalSum, cyclic_canonical, parse_cyclic as P, power


@pytest.fixture(scope="module")
def rep():
    return default_rep()


def test_bracket_of_nonessential_is_zero(rep):
    assert decide.bracket_of(rep, P("a"), P("aB")).is_zero()
    assert decide.bracket_of(rep, P("abab"), P("aaB")).is_zero()
    assert decide.bracket_of(rep, P(""), P("aaB")).is_zero()


def test_separable(rep):
    v = decide.decide_separable(rep, P("a"), P("aB"))
    assert v.separable and v.method is decide.Method.NON_ESSENTIAL
    v = decide.decide_separable(rep, P("aB"), P("aab"))
    assert not v.separable and v.intersection_count == 2 and len(v.witness_points) == 2
    # Every essential class on the pants crosses itself, so its powers are not separable.
    v = decide.decide_separable(rep, P("aB"), power(P("aB"), 4))
    assert not v.separable and v.intersection_count == 8
    assert v.method is decide.Method.SHARED_PRIMITIVE_ROOT
    assert v.to_json()["method"] == "SharedPrimitiveRoot"


def test_verdict_consistency_enforced():
    with pytest.raises(AssertionError):
        decide.SeparabilityVerdict(True, 3)


@pytest.mark.parametrize("y", ["aab", "aaB", "abb"])
@pytest.mark.parametrize("m", [2, 3])
def test_wsc(rep, y, m):
    v = decide.wsc_verdict(rep, P("aB"), P(y), m)
    assert v.consistent
    assert not v.bracket_zero and not v.i_zero


def test_wsc_equal_power(rep):
    x = P("aB")
    v = decide.wsc_verdict(rep, x, power(x, 2), 2)
    assert v.y_eq_xm and v.bracket_zero and v.consistent
    with pytest.raises(DomainError):
        decide.wsc_verdict(rep, x, P("aab"), 1)


def test_ssc(rep):
    s = decide.ssc_conditions(rep, P("aB"), P("aab"), 1, 2)
    assert s.values == (False, False, False, False) and s.agree
    s = decide.ssc_conditions(rep, P("a"), P("aB"), 2, 3, 2, -3)
    assert s.values == (True, True, True, True)
    # [z^2, z^-1] is outside the computed shapes.
    s = decide.ssc_conditions(rep, P("aB"), P("aB"), 1, 2)
    assert s.cond4 is None and s.agree
    with pytest.raises(DomainError):
        decide.ssc_conditions(rep, P("aB"), P("aab"), 2, 2)
    with pytest.raises(DomainError):
        decide.ssc_conditions(rep, P("aB"), P("aab"), 1, 2, 0, 1)


def test_is_simple(rep):
    assert decide.is_simple(rep, P("ab"))
    assert not decide.is_simple(rep, P("aB"))
    with pytest.raises(DomainError):
        decide.is_simple(rep, P("aBaB"))


def test_parse_combo():
    c = decide.parse_combo("2*aaa, -1*ab, 1/2*aB, bb")
    assert [(k, w.letters) for k, w in c] == [
        (2, "aaa"), (-1, "ab"), (Fraction(1, 2), "aB"), (1, "bb")]
    with pytest.raises(DomainError):
        decide.parse_combo("x*aa")
    with pytest.raises(DomainError):
        decide.parse_combo(" , ")


def test_center_boundary(rep):
    v = decide.center_probe(rep, decide.parse_combo("2*aaa, -1*ab"))
    assert v.central_candidate and v.bound == 1 and v.tested == (1,)


def test_center_figure_eight(rep):
    v = decide.center_probe(rep, decide.parse_combo("aB"))
    # [aB, aB] = 0; the first witness is [(aB)^2, aB].
    assert not v.central_candidate and v.witness.m == 2
    want = FormalSum({cyclic_canonical("BaBaaB"): 2, cyclic_canonical("aBaBBa"): -2})
    assert v.witness.bracket == want
    assert v.witness.m <= v.bound


@pytest.mark.parametrize("combo,m", [("aBab", 1), ("aaB", 2), ("aaB, 3*bbb", 2)])
def test_center_witness(rep, combo, m):
    v = decide.center_probe(rep, decide.parse_combo(combo))
    assert not v.central_candidate and v.witness.m == m <= v.bound


def test_center_checks(rep):
    with pytest.raises(DomainError):
        decide.center_probe(rep, [(0, P("aB"))])
    with pytest.raises(DomainError):
        decide.center_probe(rep, [(1, P("aB")), (2, P("Ba"))])


def test_metric_independence():
    a = decide.center_probe(default_rep(), decide.parse_combo("aaB"))
    b = decide.center_probe(pants_rep_from_traces(-3, -4, -5), decide.parse_combo("aaB"))
    assert a.witness.bracket == b.witness.bracket
