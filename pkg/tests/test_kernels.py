import os
import subprocess
import sys

import numpy as np
import pytest

from goldman import _kernels
from goldman.fuchsian import default_rep, holonomy
from goldman.hplane import _homog, axis, frame


def case(x="aB", y="aab"):
    rep = default_rep()
    K = frame(axis(holonomy(rep, x))).matrix
    L = axis(holonomy(rep, y))
    ey = np.column_stack([_homog(L.source), _homog(L.target)])
    return K, rep.gens, ey


def assert_same(a, b):
    # Deep words lose a few digits, differently on each path.
    a, b = sorted(a), sorted(b)
    assert [(w, g) for w, _, _, g in a] == [(w, g) for w, _, _, g in b]
    for (_, s1, p1, _), (_, s2, p2, _) in zip(a, b):
        assert abs(s1 - s2) < 1e-6 and abs(p1 - p2) < 1e-6


@pytest.mark.skipif(not _kernels.USE_NUMBA, reason="numba disabled")
@pytest.mark.parametrize("radius", [0, 1, 2, 5, 8])
def test_paths_agree(radius):
    K, gens, ey = case()
    a = _kernels.scan_ball(K, gens, ey, radius, use_numba=True)
    b = _kernels.scan_ball(K, gens, ey, radius, use_numba=False)
    assert_same(a, b)


def test_hits_are_reduced_and_bounded():
    K, gens, ey = case("aaBB", "abAB")
    hits = _kernels.scan_ball(K, gens, ey, 6)
    assert hits
    for w, s, phi, sign in hits:
        assert len(w) <= 6
        assert all(w[i + 1] != (w[i] ^ 1) for i in range(len(w) - 1))
        assert 0 < phi < np.pi and sign in (1, -1)


def test_identity_hit():
    # aB and aab cross at g = 1 on the default metric.
    K, gens, ey = case()
    assert () in [w for w, *_ in _kernels.scan_ball(K, gens, ey, 0)]


def test_env_flag_selects_numpy():
    code = "from goldman import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, GOLDMAN_DISABLE_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.stdout.strip() == "False"
