"""Independent reference for crossings, used to freeze and cross-check values.

Works from the Cayley tree instead of a ball: lifts of two crossing geodesics
pass through a common tree vertex, so every crossing double coset contains
``v q^-1`` with ``v`` a proper prefix of ``w_x`` and ``q`` a proper prefix of
``w_y``.  Double cosets are identified by word combinatorics alone, and the
crossing test compares axis endpoints in 50-digit arithmetic (no frames, no kernel).
"""

import mpmath

from goldman.words import cyclic_canonical, free_reduce, invert, primitive_root


def _same_double_coset(g1, g2, u, v):
    bound = (len(g1) + len(g2)) // min(len(u), len(v)) + 2
    ui, vi = invert(u), invert(v)
    for i in range(-bound, bound + 1):
        left = u * i if i >= 0 else ui * (-i)
        h = free_reduce(left + g1)
        for j in range(-bound, bound + 1):
            right = v * j if j >= 0 else vi * (-j)
            if free_reduce(h + right) == g2:
                return True
    return False


def _mp_gens(rep):
    # Conjugated by a fixed elliptic map so that no axis ends at infinity.
    r = 1 / mpmath.sqrt(2)
    R, Ri = [[r, r], [-r, r]], [[r, -r], [r, r]]
    out = []
    for m in rep.gens:
        a, b, c, d = (mpmath.mpf(float(v)) for v in m.ravel())
        s = mpmath.sqrt(a * d - b * c)
        out.append(_mul(_mul(R, [[a / s, b / s], [c / s, d / s]]), Ri))
    return out


def _mul(m, n):
    return [[m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]],
            [m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]]]


def _hol(gens, w):
    m = [[mpmath.mpf(1), mpmath.mpf(0)], [mpmath.mpf(0), mpmath.mpf(1)]]
    for ch in w:
        m = _mul(m, gens["aAbB".index(ch)])
    return m


def _ends(m):
    """(repelling, attracting) fixed points; assumes neither is infinite."""
    a, b, c, d = m[0][0], m[0][1], m[1][0], m[1][1]
    disc = mpmath.sqrt((a + d) ** 2 - 4)
    r1 = (a - d + disc) / (2 * c)
    r2 = (a - d - disc) / (2 * c)
    # The derivative at a fixed point z is 1 / (c z + d)^2; attracting iff < 1.
    return (r2, r1) if abs(c * r1 + d) > 1 else (r1, r2)


def _meet(gens, u, g, v):
    """(sign, angle) of the crossing of axis(u) with g . axis(v), or None."""
    p1, q1 = _ends(_hol(gens, u))
    p2, q2 = _ends(_hol(gens, g + v + invert(g)))
    eps = 1 if p1 > q1 else -1
    f = lambda z: eps * (z - p1) / (z - q1)
    x0, x1 = f(p2), f(q2)
    if x0 * x1 >= 0:
        return None
    h = mpmath.sqrt(-x0 * x1)
    phi = mpmath.atan2(2 * h / abs(x1 - x0), (x0 + x1) / (x1 - x0))
    return (1 if x1 < x0 else -1), float(phi)


def crossings(rep, x, y):
    """Ordered crossings of the primitive roots of x and y as (g, sign, angle)."""
    u = primitive_root(x)[0].letters
    v = primitive_root(y)[0].letters
    with mpmath.workdps(50):
        return _crossings(rep, u, v)


def _crossings(rep, u, v):
    gens = _mp_gens(rep)
    found = []
    for i in range(len(u)):
        for j in range(len(v)):
            g = free_reduce(u[:i] + invert(v[:j]))
            if u == v and _in_cyclic(g, u):
                continue
            meet = _meet(gens, u, g, v)
            if meet is None:
                continue
            if any(_same_double_coset(g, h, u, v) for h, _, _ in found):
                continue
            found.append((g,) + meet)
    return found


def _in_cyclic(g, u):
    if g == "":
        return True
    n, r = divmod(len(g), len(u))
    return r == 0 and (g == u * n or g == invert(u) * n)


def bracket_terms(rep, x, y):
    """{product: coefficient} for [x, y] with distinct primitive roots."""
    (rx, kx), (ry, ky) = primitive_root(x), primitive_root(y)
    out = {}
    for g, sign, _ in crossings(rep, x, y):
        w = cyclic_canonical(x.letters + g + y.letters + invert(g))
        out[w] = out.get(w, 0) + sign * kx * ky
    return {w: c for w, c in out.items() if c}


def count(rep, x, y):
    (_, kx), (_, ky) = primitive_root(x), primitive_root(y)
    return len(crossings(rep, x, y)) * kx * ky


def self_count(rep, x):
    return sum(1 for _, s, _ in crossings(rep, x, x) if s > 0)
