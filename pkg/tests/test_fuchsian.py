import math

import numpy as np
import pytest

from goldman.errors import ConstructionError, DomainError, Unsupported
from goldman.fuchsian import (
    SurfaceKind,
    default_rep,
    geodesic_length,
    holonomy,
    holonomy_matrix,
    is_nonessential,
    pants_rep,
    pants_rep_from_traces,
    rep_from_config,
    torus_rep,
)
from goldman.hplane import MobiusMap
from goldman.words import cyclic_words, parse_cyclic


def test_default_traces():
    rep = default_rep()
    A, B = rep.gens[0], rep.gens[2]
    assert np.trace(A) == pytest.approx(-3)
    assert np.trace(B) == pytest.approx(-3)
    assert np.trace(A @ B) == pytest.approx(-3)
    assert np.linalg.det(A) == pytest.approx(1) and np.linalg.det(B) == pytest.approx(1)


def test_fricke_identity():
    # tr aB = tr a tr b - tr ab in SL2.
    rep = pants_rep_from_traces(-3, -4, -5)
    t = np.trace(holonomy_matrix(rep, "aB"))
    assert t == pytest.approx(-3 * -4 - (-5))
    assert geodesic_length(rep, parse_cyclic("aB")) == pytest.approx(2 * math.acosh(17 / 2))


def test_lengths_roundtrip():
    rep = pants_rep(1.0, 2.0, 3.0)
    assert rep.lengths == (1.0, 2.0, 3.0)
    for w, l in (("a", 1.0), ("b", 2.0), ("ab", 3.0)):
        assert geodesic_length(rep, parse_cyclic(w)) == pytest.approx(l)


def test_holonomy_is_homomorphism():
    rep = default_rep()
    g = holonomy(rep, "aBab") @ holonomy(rep, "bA")
    assert g.isclose(holonomy(rep, "aBabbA"))
    assert (holonomy(rep, "aB") @ holonomy(rep, "bA")).isclose(MobiusMap.identity())


def test_nonessential_classes():
    rep = default_rep()
    bnd = {w.letters for w in cyclic_words(4) if is_nonessential(rep, w)}
    assert bnd == {"a", "A", "b", "B", "ab", "AB", "aa", "AA", "bb", "BB",
                   "aaa", "AAA", "bbb", "BBB", "abab", "ABAB", "aaaa", "AAAA", "bbbb", "BBBB"}
    assert not is_nonessential(rep, parse_cyclic("aB"))


def test_bad_traces():
    with pytest.raises(DomainError):
        pants_rep_from_traces(-1.5, -3, -3)
    with pytest.raises(DomainError):
        pants_rep(0.0, 1.0, 1.0)


def test_config():
    assert rep_from_config({}) == default_rep()
    rep = rep_from_config({"lengths": [1, 2, 3]})
    assert rep.kind is SurfaceKind.PANTS
    with pytest.raises(DomainError):
        rep_from_config({"traces": [-3, -3]})
    with pytest.raises(DomainError):
        rep_from_config({"surface": "sphere"})


def test_torus_commutator_parabolic():
    rep = torus_rep(3.0, 3.0)
    t = np.trace(holonomy_matrix(rep, "abAB"))
    assert t == pytest.approx(-2)
    with pytest.raises(Unsupported):
        rep.lengths
    with pytest.raises(ConstructionError):
        torus_rep(2.1, 2.1)


def test_conjugated_chart():
    rep = default_rep()
    m = MobiusMap(2.0, 1.0, 1.0, 1.0)
    c = rep.conjugated(m)
    assert c != rep
    assert np.trace(holonomy_matrix(c, "aBB")) == pytest.approx(np.trace(holonomy_matrix(rep, "aBB")))
