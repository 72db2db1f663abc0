import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from goldman.errors import DomainError
from goldman.hplane import (
    INF,
    DirectedGeodesic,
    Kind,
    MobiusMap,
    axis,
    classify,
    compose_check_cosh,
    crossing_sign,
    dist,
    forward_angle,
    frame,
    geodesic_meet,
    half_turn,
    line_through,
    midpoint,
    point_at,
    reflect,
    translation,
    translation_length,
    two_reflection_decomposition,
    two_rotation_decomposition,
)

coord = st.floats(-3, 3)
height = st.floats(0.2, 4)


def test_mobius_normalizes_and_keeps_sign():
    g = MobiusMap(-2.0, 0.0, 0.0, -2.0)
    assert g.trace() == pytest.approx(-2.0)
    assert g == MobiusMap.identity()
    with pytest.raises(DomainError):
        MobiusMap(0.0, 1.0, 1.0, 0.0)


def test_classify():
    assert classify(MobiusMap(2.0, 0.0, 0.0, 0.5)) is Kind.HYPERBOLIC
    assert classify(MobiusMap(1.0, 1.0, 0.0, 1.0)) is Kind.PARABOLIC
    assert classify(MobiusMap(0.0, -1.0, 1.0, 0.0)) is Kind.ELLIPTIC
    assert classify(MobiusMap.identity()) is Kind.IDENTITY


def test_axis_and_length_of_dilation():
    g = MobiusMap(math.e, 0.0, 0.0, 1 / math.e)
    L = axis(g)
    assert L.source == pytest.approx(0.0) and L.target is INF
    assert translation_length(g) == pytest.approx(2.0)


def test_line_through_and_frame():
    p, q = -0.5 + 1j, 1.0 + 0.5j
    L = line_through(p, q)
    K = frame(L)
    for z in (p, q):
        assert abs(K(z).real) < 1e-12
    assert abs(K(q)) > abs(K(p))


def test_meet_of_perpendicular_lines():
    L1 = DirectedGeodesic(0.0, INF)
    L2 = DirectedGeodesic(1.0, -1.0)
    p, phi = geodesic_meet(L1, L2)
    assert p == pytest.approx(1j)
    assert phi == pytest.approx(math.pi / 2)
    assert crossing_sign(L1, L2, p) == 1
    assert geodesic_meet(L1, DirectedGeodesic(1.0, 2.0)) is None


def test_reflection_fixes_line():
    L = DirectedGeodesic(-1.0, 3.0)
    R = reflect(L)
    z = point_at(L, 1j, 0.3)
    assert abs(R(z) - z) < 1e-12
    w = 0.2 + 2j
    assert abs(R(R(w)) - w) < 1e-12


def test_decompositions():
    g = MobiusMap(3.0, 1.0, 2.0, 1.0)
    L1, L2 = two_reflection_decomposition(g)
    M = reflect(L2) @ reflect(L1)
    assert MobiusMap(M.matrix).isclose(g, 1e-9)
    v1, v2 = two_rotation_decomposition(g)
    assert (half_turn(v2) @ half_turn(v1)).isclose(g, 1e-9)


def test_cosh_law_right_angle():
    g = translation(DirectedGeodesic(0.0, INF), 1.0)
    h = translation(DirectedGeodesic(-1.0, 1.0), 2.0)
    c = compose_check_cosh(g, h)
    assert c.theta == pytest.approx(math.pi / 2)
    assert c.relative_residual < 1e-12
    # At a right angle the cross term drops out.
    assert math.cosh(c.t_gh / 2) == pytest.approx(math.cosh(0.5) * math.cosh(1.0))


@given(coord, height, coord, height)
def test_dist_symmetric_and_midpoint(x1, y1, x2, y2):
    p, q = complex(x1, y1), complex(x2, y2)
    assert dist(p, q) == pytest.approx(dist(q, p))
    if dist(p, q) > 1e-6:
        m = midpoint(p, q)
        assert dist(p, m) == pytest.approx(dist(p, q) / 2, rel=1e-7, abs=1e-9)


@given(st.floats(-2, 2), st.floats(0.1, 3), st.floats(-2, 2), st.floats(0.1, 3))
def test_forward_angle_matches_meet(a, r1, b, r2):
    L1 = DirectedGeodesic(a - r1, a + r1)
    L2 = DirectedGeodesic(b + r2, b - r2)
    meet = geodesic_meet(L1, L2)
    if meet is None:
        return
    p, phi = meet
    assert forward_angle(L1, L2, p) == pytest.approx(phi, abs=1e-7)


def test_translation_moves_along_axis():
    L = DirectedGeodesic(-2.0, 1.0)
    T = translation(L, 0.7)
    z = point_at(L, 1j, 0.0)
    assert dist(z, T(z)) == pytest.approx(0.7)
    assert abs(T(z) - point_at(L, z, 0.7)) < 1e-12
    assert np.allclose(T.inverse().matrix @ T.matrix, np.eye(2))
    assert cmath.isclose(T.inverse()(T(z)), z)
