import math

import pytest

import oracle
from goldman.errors import DomainError, Unsupported
from goldman.fuchsian import default_rep, pants_rep_from_traces
from goldman.intersect import (
    bracket_general,
    bracket_power,
    bracket_power_self,
    bracket_sum,
    effective_radius,
    goldman_bracket,
    intersection_number,
    min_angle_point,
    self_intersection_number,
    self_intersection_points,
    transverse_points,
)
from goldman.words import FormalSum, cyclic_canonical, parse_cyclic as P, power

METRICS = [(-3, -3, -3), (-3, -4, -5)]


def fs(d):
    return FormalSum({(P(w) if isinstance(w, str) else w): c for w, c in d.items()})


# Frozen from tests/oracle.py (tree-vertex enumeration in 50-digit arithmetic).
# The values agree on both metrics, as they should.
PAIRS = [
    ("aB", "aab", 2, {"aabaB": 1, "aaBab": -1}),
    ("aB", "aaB", 2, {}),
    ("aaB", "abb", 2, {}),
    ("aBab", "aB", 2, {"aabaBB": -1, "aaBBab": 1}),
    ("aaBB", "abAB", 4, {"aaabABBB": 1, "aaBBabAB": -1, "aaBBABab": 1, "aBaB": -1}),
    ("aB", "bbA", 2, {"abbAB": -1, "aBAbb": 1}),
]
SELF = [("aB", 1), ("aaB", 2), ("aaBB", 3), ("aabAB", 4), ("abAB", 3)]


@pytest.mark.parametrize("traces", METRICS)
@pytest.mark.parametrize("x,y,n,terms", PAIRS)
def test_frozen_pairs(traces, x, y, n, terms):
    rep = pants_rep_from_traces(*traces)
    assert intersection_number(rep, P(x), P(y)) == n
    assert bracket_sum(rep, P(x), P(y)) == fs(terms)


@pytest.mark.parametrize("traces", METRICS)
@pytest.mark.parametrize("x,n", SELF)
def test_frozen_self(traces, x, n):
    rep = pants_rep_from_traces(*traces)
    assert self_intersection_number(rep, P(x)) == n


def test_live_oracle_agrees():
    rep = pants_rep_from_traces(-3, -4, -5)
    for x, y in (("aaB", "aBB"), ("abbAB", "aB"), ("aaBaB", "abb")):
        assert bracket_sum(rep, P(x), P(y)) == fs(oracle.bracket_terms(rep, P(x), P(y)))
        assert intersection_number(rep, P(x), P(y)) == oracle.count(rep, P(x), P(y))


def test_antisymmetry_and_inverse():
    rep = default_rep()
    x, y = P("aB"), P("aab")
    assert bracket_sum(rep, y, x) == -bracket_sum(rep, x, y)
    # Reversing y flips every sign and replaces the product class.
    inv = bracket_sum(rep, x, y.inverse())
    assert sum(inv.terms.values()) == -sum(bracket_sum(rep, x, y).terms.values())


def test_power_of_figure_eight():
    rep = default_rep()
    x = P("aB")
    for m in (2, 3):
        want = FormalSum({cyclic_canonical("Ba" * m + "aB"): m, cyclic_canonical("aB" * m + "Ba"): -m})
        assert bracket_power_self(rep, x, m) == want
        assert bracket_general(rep, power(x, m), x) == want
        assert bracket_general(rep, x, power(x, m)) == -want


def test_power_multiplies_terms():
    rep = default_rep()
    b1 = goldman_bracket(rep, P("aB"), P("aab"))
    b3 = bracket_power(rep, P("aB"), P("aab"), 3)
    assert len(b3.points) == 3 * len(b1.points)
    assert b3.sum.term_count() == 3 * b1.sum.term_count()
    assert b3.converged


def test_shared_root_count_and_limits():
    rep = default_rep()
    z = P("aB")
    assert intersection_number(rep, power(z, 2), power(z, 3)) == 12
    assert intersection_number(rep, z, P("ab")) == 0
    with pytest.raises(DomainError):
        transverse_points(rep, z, power(z, 2))
    with pytest.raises(Unsupported):
        bracket_general(rep, power(z, 2), power(z, 3))


def test_points_satisfy_cosh_law():
    rep = pants_rep_from_traces(-3, -4, -5)
    pts = transverse_points(rep, P("aaBB"), P("abAB")) + self_intersection_points(rep, P("aabAB"))
    assert max(p.cosh_residual() for p in pts) < 1e-9
    p = min_angle_point(pts)
    assert all(p.angle <= q.angle for q in pts)
    assert 0 < p.angle < math.pi


def test_effective_radius_and_checks():
    assert effective_radius(P("aaBaB"), P("abbAB"), 8) == 8
    assert effective_radius(P("aaBaBaB"), P("abbABab"), 8) == 12
    rep = default_rep()
    with pytest.raises(DomainError):
        transverse_points(rep, P("aB"), P("aab"), radius=0)
    with pytest.raises(DomainError):
        transverse_points(rep, P(""), P("aab"))


def test_numpy_path_matches():
    rep = default_rep()
    a = transverse_points(rep, P("aaBB"), P("abbAB"), use_numba=True)
    b = transverse_points(rep, P("aaBB"), P("abbAB"), use_numba=False)
    assert [(p.coset_rep, p.sign) for p in a] == [(p.coset_rep, p.sign) for p in b]
    assert all(abs(p.angle - q.angle) < 1e-12 for p, q in zip(a, b))
