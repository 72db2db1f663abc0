"""Extended-precision helpers (mpmath) for computations that floats cannot settle.

Used to build zigzag curves far from the base point and to re-check
crossings that are numerically close to tangency.
"""

import mpmath

from .hplane import MobiusMap
from .words import invert

DPS = 50


def mat(m) -> mpmath.matrix:
    a, b, c, d = (mpmath.mpf(float(v)) for v in (m[0][0], m[0][1], m[1][0], m[1][1]))
    s = mpmath.sqrt(a * d - b * c)
    return mpmath.matrix([[a / s, b / s], [c / s, d / s]])


def inv(m):
    return mpmath.matrix([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def word(gens, letters: str):
    m = mpmath.eye(2)
    for ch in letters:
        m = m * gens["aAbB".index(ch)]
    return m


def apply(m, z):
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def frame(m):
    """Matrix sending the repelling fixed point of ``m`` to 0 and the attracting one to infinity."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    t = a + d
    disc = mpmath.sqrt(t * t - 4)
    lam_big = (t + disc) / 2 if t > 0 else (t - disc) / 2
    lam_small = 1 / lam_big

    def vec(lam):
        # An eigenvector of m for eigenvalue lam, chosen from the better row.
        v1 = mpmath.matrix([b, lam - a])
        v2 = mpmath.matrix([lam - d, c])
        return v1 if mpmath.norm(v1) > mpmath.norm(v2) else v2

    tgt, src = vec(lam_big), vec(lam_small)
    E = mpmath.matrix([[tgt[0], src[0]], [tgt[1], src[1]]])
    if mpmath.det(E) < 0:
        E[0, 1], E[1, 1] = -E[0, 1], -E[1, 1]
    Fi = inv(E)
    return Fi / mpmath.sqrt(mpmath.det(Fi))


def cross(m1, m2):
    """Crossing of the axes of ``m1`` and ``m2`` as (point, angle, sign), or None."""
    F = frame(m1)
    Gi = inv(frame(F * m2 * inv(F)))
    # Source and target of the second axis in the frame of the first.
    x0 = Gi[0, 1] / Gi[1, 1]
    x1 = Gi[0, 0] / Gi[1, 0]
    if x0 * x1 >= 0:
        return None
    h = mpmath.sqrt(-x0 * x1)
    phi = mpmath.atan2(2 * h / abs(x1 - x0), (x0 + x1) / (x1 - x0))
    return apply(inv(F), mpmath.mpc(0, h)), phi, (1 if x1 < x0 else -1)


def midpoint(p, q):
    w = (q - p) / (q - mpmath.conj(p))
    r = abs(w)
    if r == 0:
        return p
    m = mpmath.tanh(mpmath.atanh(r) / 2) * w / r
    return (p - mpmath.conj(p) * m) / (1 - m)


def to_complex(z) -> complex:
    return complex(float(z.real), float(z.imag))


def to_mobius(m) -> MobiusMap:
    # Entries can be large enough that a float determinant cancels; normalize here.
    m = m / mpmath.sqrt(mpmath.det(m))
    return MobiusMap._raw(*(float(m[i, j]) for i, j in ((0, 0), (0, 1), (1, 0), (1, 1))))


def gens_of(rep):
    return [mat(m) for m in rep.gens]


def crossing(rep, u: str, v: str, g: str):
    """Crossing of axis(u) with g . axis(v) as (point, angle, sign) in floats, or None."""
    with mpmath.workdps(DPS):
        gens = gens_of(rep)
        c = cross(word(gens, u), word(gens, g + v + invert(g)))
        if c is None:
            return None
        return to_complex(c[0]), float(c[1]), c[2]


def trace_length(m):
    return 2 * mpmath.acosh(abs(m[0, 0] + m[1, 1]) / 2)


def dist(p, q):
    return 2 * mpmath.asinh(abs(p - q) / (2 * mpmath.sqrt(p.imag * q.imag)))


def _hom(x):
    return (mpmath.mpf(1), mpmath.mpf(0)) if x is None else (x, mpmath.mpf(1))


def line(p, q):
    """Endpoints (source, target) of the geodesic from p to q; None stands for infinity."""
    if p.real == q.real:
        return (p.real, None) if p.imag < q.imag else (None, p.real)
    c = (abs(q) ** 2 - abs(p) ** 2) / (2 * (q.real - p.real))
    r = abs(p - c)
    return (c - r, c + r) if p.real < q.real else (c + r, c - r)


def line_frame(L):
    """Matrix sending the source of L to 0 and its target to infinity."""
    t, s = _hom(L[1]), _hom(L[0])
    E = mpmath.matrix([[t[0], s[0]], [t[1], s[1]]])
    if mpmath.det(E) < 0:
        E[0, 1], E[1, 1] = -E[0, 1], -E[1, 1]
    F = inv(E)
    return F / mpmath.sqrt(mpmath.det(F))


def line_meet(L1, L2):
    """Crossing of two directed geodesics as (point, angle, sign), or None."""
    F = line_frame(L1)
    xs = []
    for e in L2:
        u, v = _hom(e)
        a, b = F[0, 0] * u + F[0, 1] * v, F[1, 0] * u + F[1, 1] * v
        if b == 0 or a == 0:
            return None
        xs.append(a / b)
    x0, x1 = xs
    if x0 * x1 >= 0:
        return None
    h = mpmath.sqrt(-x0 * x1)
    phi = mpmath.atan2(2 * h / abs(x1 - x0), (x0 + x1) / (x1 - x0))
    return apply(inv(F), mpmath.mpc(0, h)), phi, (1 if x1 < x0 else -1)
