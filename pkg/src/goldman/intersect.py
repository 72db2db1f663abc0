"""Transverse intersection points of closed geodesics and the Goldman bracket.

An intersection point of the closed geodesics of ``x`` and ``y`` is a double
coset ``<w_x> g <w_y>`` such that ``axis(x)`` crosses ``g . axis(y)``.  The
ball scan in :mod:`._kernels` finds candidate ``g``; each hit is slid along
``axis(x)`` by powers of the primitive root of ``x`` into one fundamental
segment, and hits landing on the same crossing are merged.

Everything is computed for primitive roots first and then expanded: a point
of ``r^k`` and ``s^l`` is one of ``k * l`` copies of a point of ``r`` and ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels, _mp
from .errors import DegenerateConfiguration, DomainError, Unsupported
from .fuchsian import SurfaceKind, SurfaceRep, holonomy, holonomy_matrix, is_nonessential, trace_length
from .hplane import INF, TOL, MobiusMap, _homog, axis, frame
from .words import (
    CyclicWord,
    FormalSum,
    Word,
    _canonical,
    free_reduce,
    invert,
    power,
    primitive_root,
    shortlex_key,
)

DEFAULT_RADIUS = 8
MAX_RADIUS = 14

_LETTERS = "aAbB"
_CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class TransversePoint:
    lift: complex
    coset_rep: Word
    sign: int
    angle: float
    product: CyclicWord
    len_x: float
    len_y: float
    product_length: float = field(default=float("nan"), compare=False)

    def cosh_residual(self) -> float:
        """Relative defect of the composition law at this point."""
        lhs = math.cosh(self.product_length / 2)
        hx, hy = self.len_x / 2, self.len_y / 2
        rhs = math.cosh(hx) * math.cosh(hy) + math.sinh(hx) * math.sinh(hy) * math.cos(self.angle)
        return abs(lhs - rhs) / lhs

    def to_json(self) -> dict:
        return {
            "g": self.coset_rep.letters,
            "sign": self.sign,
            "angle": round(self.angle, 12),
            "product": self.product.letters,
        }


@dataclass(frozen=True)
class BracketResult:
    sum: FormalSum
    points: list
    radius_used: int
    converged: bool

    def to_json(self) -> dict:
        return {
            "terms": self.sum.to_json(),
            "points": [p.to_json() for p in self.points],
            "radius": self.radius_used,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class _RootPoint:
    g: str        # shortest label found for the double coset
    height: float  # position along axis(root x) in [0, len)
    angle: float
    sign: int


def _check_radius(radius: int) -> int:
    if not isinstance(radius, (int, np.integer)) or not 1 <= radius <= MAX_RADIUS:
        raise DomainError(f"radius must be an integer in [1, {MAX_RADIUS}], got {radius!r}")
    return int(radius)


def effective_radius(rx: CyclicWord, ry: CyclicWord, radius: int) -> int:
    """Radius actually scanned.

    Every crossing has a double-coset representative of length at most
    ``|rx| + |ry| - 2`` (the tree axes of crossing lifts share a vertex), so
    the ball is enlarged to that size when needed.
    """
    return max(radius, len(rx) + len(ry) - 2)


@lru_cache(maxsize=4096)
def _axis_data(rep: SurfaceRep, letters: str):
    g = holonomy(rep, letters)
    L = axis(g)
    ey = np.column_stack([_homog(L.source), _homog(L.target)])
    return L, ey


def _measure(K: np.ndarray, M: np.ndarray, ey: np.ndarray):
    F = K @ M @ ey
    u0, v0, u1, v1 = F[0, 0], F[1, 0], F[0, 1], F[1, 1]
    n0, n1 = math.hypot(u0, v0), math.hypot(u1, v1)
    eps = 1e-13
    if min(abs(u0) / n0, abs(v0) / n0, abs(u1) / n1, abs(v1) / n1) <= eps:
        return None
    x0, x1 = u0 / v0, u1 / v1
    if x0 * x1 >= 0:
        return None
    h = math.sqrt(-x0 * x1)
    phi = math.atan2(2.0 * h / abs(x1 - x0), (x0 + x1) / (x1 - x0))
    return math.log(h), phi, (1 if x1 < x0 else -1)


# Crossings this close to tangency are settled in extended precision: near 0
# or pi the float angle is only good to ~1e-10, while the cosh identity
# cancels almost completely there.
_MP_ANGLE = 0.05


def _near_tangent(phi: float) -> bool:
    return phi < _MP_ANGLE or phi > math.pi - _MP_ANGLE


def _measure_mp(rep, rx: str, ry: str, g: str, K: np.ndarray):
    c = _mp.crossing(rep, rx, ry, g)
    if c is None:
        return None
    p, phi, sign = c
    w = (K[0, 0] * p + K[0, 1]) / (K[1, 0] * p + K[1, 1])
    return math.log(abs(w)), phi, sign


def _shorten(g: str, u: str, v: str) -> str:
    """Greedily shorten ``g`` inside its double coset ``<u> g <v>``."""
    ui, vi = invert(u), invert(v)
    while True:
        best = g
        for c in (free_reduce(ui + g), free_reduce(u + g), free_reduce(g + vi), free_reduce(g + v)):
            if shortlex_key(c) < shortlex_key(best):
                best = c
        if len(best) >= len(g):
            return g if shortlex_key(g) <= shortlex_key(best) else best
        g = best


def _in_cyclic(g: str, u: str) -> bool:
    if g == "":
        return True
    n, r = divmod(len(g), len(u))
    return r == 0 and (g == u * n or g == invert(u) * n)


def _canonical_label(h: str, v: str) -> str:
    # Shortlex-least element of h <v>; right multiplication keeps the crossing.
    J = len(h) // max(len(v), 1) + 2
    vi = invert(v)
    cands = [free_reduce(h + v * j) for j in range(J + 1)] + [free_reduce(h + vi * j) for j in range(1, J + 1)]
    return min(cands, key=shortlex_key)


def _root_points_uncached(rep: SurfaceRep, rx: str, ry: str, radius: int, use_numba: bool | None) -> tuple:
    Lx, _ = _axis_data(rep, rx)
    _, ey = _axis_data(rep, ry)
    K = frame(Lx).matrix
    lx = trace_length(holonomy_matrix(rep, rx).trace())
    self_mode = rx == ry
    hits = _kernels.scan_ball(K, rep.gens, ey, radius, use_numba)
    inv_rx = invert(rx)
    # Every crossing has a hit of length <= len(rx) + len(ry) - 2.  Long words
    # are imprecise (rho(y) amplifies errors near its repelling end), so a
    # hit is only examined when it matches no crossing seen so far, and is
    # then shortened inside its double coset and measured again.
    short_len = len(rx) + len(ry) - 2
    hits.sort(key=lambda t: len(t[0]))
    clusters: list[list] = []

    def match(h, phi, tol):
        for c in clusters:
            dh = abs(c[0] - h)
            dh = min(dh, abs(lx - dh))
            if dh < tol * max(1.0, lx) and abs(c[1] - phi) < tol:
                return c
        return None

    for word, s_raw, phi_raw, _sign in hits:
        long_hit = len(word) > short_len
        if match(s_raw % lx, phi_raw, 1e-4 if long_hit else _CLUSTER_TOL) is not None:
            continue
        g = _shorten("".join(_LETTERS[c] for c in word), rx, ry)
        if self_mode and _in_cyclic(g, rx):
            continue
        m = _measure(K, holonomy_matrix(rep, g), ey)
        if _near_tangent(phi_raw) or (m is not None and _near_tangent(m[1])):
            m = _measure_mp(rep, rx, ry, g, K)
        if m is None:
            continue
        s_val, phi, sign = m
        n = math.floor(s_val / lx)
        h = s_val - n * lx
        if h >= lx - 1e-9 * max(1.0, lx):
            n += 1
            h = max(h - lx, 0.0)
        if match(h, phi, _CLUSTER_TOL) is None:
            clusters.append([h, phi, sign, g, n])
    out = []
    keys = set()
    for h, phi, sign, g, n in clusters:
        # Slide onto the fundamental segment of axis(x): g -> rx^-n g.
        if n > 0:
            g = free_reduce(inv_rx * n + g)
        elif n < 0:
            g = free_reduce(rx * (-n) + g)
        label = _canonical_label(g, ry)
        # Exact double-coset key; imprecise long hits may have slipped past
        # the geometric clustering.
        key = min((_canonical_label(free_reduce(pre + g), ry) for pre in (inv_rx, "", rx)), key=shortlex_key)
        if key in keys:
            continue
        keys.add(key)
        out.append(_RootPoint(label, h, phi, sign))
    out.sort(key=lambda p: shortlex_key(p.g))
    return tuple(out)


def _flip_second(pts: tuple, ry: str, ry_new: str) -> tuple:
    """Points of (rx, ry_new) from points of (rx, ry), with ry_new the class of ry^-1.

    ``invert(ry) = u v`` and ``ry_new = v u``, so ``g . axis(ry) = g u . axis(ry_new)``
    reversed: the point stays, the angle becomes pi - phi and the sign flips.
    """
    w = invert(ry)
    k = next(i for i in range(len(w)) if w[i:] + w[:i] == ry_new)
    u = w[:k]
    out = [_RootPoint(_canonical_label(free_reduce(p.g + u), ry_new), p.height, math.pi - p.angle, -p.sign)
           for p in pts]
    out.sort(key=lambda p: shortlex_key(p.g))
    return tuple(out)


def _swap(rep: SurfaceRep, rx: str, ry: str, pts: tuple) -> tuple:
    """Points of (ry, rx) from points of (rx, ry): the coset of g becomes that of g^-1."""
    Lx, _ = _axis_data(rep, rx)
    Ly, _ = _axis_data(rep, ry)
    Kxi = frame(Lx).inverse()
    Ky = frame(Ly)
    ly = trace_length(holonomy_matrix(rep, ry).trace())
    inv_ry = invert(ry)
    out = []
    for p in pts:
        gi = invert(p.g)
        q = holonomy(rep, gi)(Kxi(1j * math.exp(p.height)))
        s_val = math.log(abs(Ky(q)))
        n = math.floor(s_val / ly)
        h = s_val - n * ly
        if h >= ly - 1e-9 * max(1.0, ly):
            n += 1
            h = max(h - ly, 0.0)
        if n > 0:
            gi = free_reduce(inv_ry * n + gi)
        elif n < 0:
            gi = free_reduce(ry * (-n) + gi)
        out.append(_RootPoint(_canonical_label(gi, rx), h, p.angle, -p.sign))
    out.sort(key=lambda p: shortlex_key(p.g))
    return tuple(out)


def _cyclic_inverse(r: str) -> str:
    return _canonical(invert(r)).letters


def _least(r: str) -> str:
    ri = _cyclic_inverse(r)
    return ri if shortlex_key(ri) < shortlex_key(r) else r


@lru_cache(maxsize=200_000)
def _root_points_cached(rep: SurfaceRep, rx: str, ry: str, radius: int, use_numba) -> tuple:
    # One scan serves all eight pairs (rx^+-1, ry^+-1), (ry^+-1, rx^+-1): the
    # scan is run for the pair of shortlex-least representatives and the
    # others are derived from it.
    cx, cy = _least(rx), _least(ry)
    if cx == cy:
        return _root_points_uncached(rep, rx, ry, radius, use_numba)
    if shortlex_key(cy) < shortlex_key(cx):
        return _swap(rep, ry, rx, _root_points_cached(rep, ry, rx, radius, use_numba))
    if ry != cy:
        return _flip_second(_root_points_cached(rep, rx, cy, radius, use_numba), cy, ry)
    if rx != cx:
        pts = _swap(rep, cx, ry, _root_points_cached(rep, cx, ry, radius, use_numba))
        return _swap(rep, ry, rx, _flip_second(pts, cx, rx))
    return _root_points_uncached(rep, rx, ry, radius, use_numba)


def root_points(rep: SurfaceRep, rx: CyclicWord, ry: CyclicWord, radius: int, use_numba: bool | None = None):
    """Crossings of the primitive classes ``rx`` and ``ry`` found in a ball.

    With ``rx == ry`` the lifts ``g`` in ``<rx>`` are skipped and both
    orderings of every self-crossing appear.
    """
    return _root_points_cached(rep, rx.letters, ry.letters, radius, use_numba)


def _check_tangency(pts):
    for p in pts:
        if not (TOL.tangency < p.angle < math.pi - TOL.tangency):
            raise DegenerateConfiguration(
                f"crossing at g={p.g!r} has angle {p.angle:.3e}, too close to tangency"
            )


def _product_length(rep, letters):
    return trace_length(holonomy_matrix(rep, letters).trace())


def _expand(rep, x: CyclicWord, y: CyclicWord, rx, kx, ry, ky, roots) -> list[TransversePoint]:
    lx_root = trace_length(holonomy_matrix(rep, rx.letters).trace())
    ly_root = trace_length(holonomy_matrix(rep, ry.letters).trace())
    Kinv = frame(_axis_data(rep, rx.letters)[0]).inverse()
    out = []
    for p in roots:
        prod = _canonical(x.letters + p.g + y.letters + invert(p.g))
        plen = _product_length(rep, prod.letters)
        for i in range(kx):
            left = rx.letters * i
            lift = Kinv(1j * math.exp(p.height + i * lx_root))
            for j in range(ky):
                g = Word(free_reduce(left + p.g + ry.letters * j))
                out.append(TransversePoint(lift, g, p.sign, p.angle, prod, kx * lx_root, ky * ly_root, plen))
    out.sort(key=lambda t: shortlex_key(t.coset_rep.letters))
    return out


def _converged(roots, radius_used) -> bool:
    return all(len(p.g) <= radius_used - 2 for p in roots)


def _require_nonempty(*words):
    for w in words:
        if w.is_empty():
            raise DomainError("classes must be nonempty (the constant loop has no geodesic)")


def _shares_root(rx, ry) -> bool:
    return rx == ry or rx == ry.inverse()


def _scan(rep, x, y, radius, use_numba=None):
    _require_nonempty(x, y)
    radius = _check_radius(radius)
    (rx, kx), (ry, ky) = primitive_root(x), primitive_root(y)
    if _shares_root(rx, ry):
        raise DomainError(
            f"{x.letters} and {y.letters} share a primitive root; use intersection_number "
            "or bracket_power_self for this case"
        )
    r = effective_radius(rx, ry, radius)
    roots = root_points(rep, rx, ry, r, use_numba)
    _check_tangency(roots)
    return _expand(rep, x, y, rx, kx, ry, ky, roots), r, _converged(roots, r)


def transverse_points(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, radius: int = DEFAULT_RADIUS,
                      use_numba: bool | None = None) -> list[TransversePoint]:
    return _scan(rep, x, y, radius, use_numba)[0]


def _self_roots(rep, x, radius, use_numba=None):
    _require_nonempty(x)
    radius = _check_radius(radius)
    rx, k = primitive_root(x)
    if k != 1:
        raise DomainError(f"{x.letters} is not primitive; pass its root {rx.letters} instead")
    r = effective_radius(rx, rx, radius)
    roots = root_points(rep, rx, rx, r, use_numba)
    _check_tangency(roots)
    return roots, r


def self_intersection_points(rep: SurfaceRep, x: CyclicWord, radius: int = DEFAULT_RADIUS,
                             use_numba: bool | None = None) -> list[TransversePoint]:
    """One point per self-crossing of the geodesic of a primitive class.

    Each crossing shows up as two ordered double cosets ``g`` and ``g^-1`` of
    opposite sign; the positive one is kept.
    """
    roots, _ = _self_roots(rep, x, radius, use_numba)
    return _expand(rep, x, x, x, 1, x, 1, [p for p in roots if p.sign > 0])


def self_intersection_number(rep, x, radius=DEFAULT_RADIUS) -> int:
    rx, _ = primitive_root(x)
    return len(self_intersection_points(rep, rx, radius))


def intersection_number(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, radius: int = DEFAULT_RADIUS) -> int:
    """Geometric intersection number of the two classes.

    When ``x`` and ``y`` are powers ``z^p``, ``z^q`` of one primitive class
    the geodesics coincide; pushing one off gives ``2 p q`` crossings for each
    self-crossing of ``z``, which is zero exactly when ``z`` is simple.
    """
    if x.is_empty() or y.is_empty():
        return 0
    if rep.kind is SurfaceKind.PANTS and (is_nonessential(rep, x) or is_nonessential(rep, y)):
        return 0
    (rx, p), (ry, q) = primitive_root(x), primitive_root(y)
    if _shares_root(rx, ry):
        return 2 * p * q * self_intersection_number(rep, rx, radius)
    radius = _check_radius(radius)
    roots = root_points(rep, rx, ry, effective_radius(rx, ry, radius))
    _check_tangency(roots)
    return p * q * len(roots)


def bracket_sum(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, radius: int = DEFAULT_RADIUS) -> FormalSum:
    """Just ``goldman_bracket(...).sum``, without building the point list."""
    if x.is_empty() or y.is_empty():
        return FormalSum()
    return _bracket_sum_cached(rep, x, y, _check_radius(radius))


@lru_cache(maxsize=200_000)
def _bracket_sum_cached(rep, x, y, radius):
    (rx, kx), (ry, ky) = primitive_root(x), primitive_root(y)
    if _shares_root(rx, ry):
        raise DomainError(f"{x.letters} and {y.letters} share a primitive root")
    roots = root_points(rep, rx, ry, effective_radius(rx, ry, radius))
    _check_tangency(roots)
    acc: dict = {}
    for p in roots:
        prod = _canonical(x.letters + p.g + y.letters + invert(p.g))
        acc[prod] = acc.get(prod, 0) + p.sign * kx * ky
    return FormalSum(acc)


def _bracket_from_points(points) -> FormalSum:
    acc: dict = {}
    for p in points:
        acc[p.product] = acc.get(p.product, 0) + p.sign
    return FormalSum(acc)


def goldman_bracket(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, radius: int = DEFAULT_RADIUS,
                    use_numba: bool | None = None) -> BracketResult:
    """``[x, y]``: sum over crossings of the sign times the class of the loop product."""
    if x.is_empty() or y.is_empty():
        return BracketResult(FormalSum(), [], _check_radius(radius), True)
    points, r, conv = _scan(rep, x, y, radius, use_numba)
    return BracketResult(_bracket_from_points(points), points, r, conv)


def bracket_power(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, m: int, radius: int = DEFAULT_RADIUS,
                  use_numba: bool | None = None) -> BracketResult:
    """``[x^m, y]``; each crossing of ``x`` and ``y`` contributes ``m`` equal terms."""
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    if x.is_empty():
        return BracketResult(FormalSum(), [], _check_radius(radius), True)
    return goldman_bracket(rep, power(x, m), y, radius, use_numba)


def bracket_power_self(rep: SurfaceRep, x: CyclicWord, m: int, radius: int = DEFAULT_RADIUS) -> FormalSum:
    """``[x^m, x]`` for a primitive essential class and ``m >= 2``."""
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    if rep.kind is SurfaceKind.PANTS and is_nonessential(rep, x):
        raise DomainError(f"{x.letters or '1'} is not essential")
    roots, _ = _self_roots(rep, x, radius)
    w = x.letters
    acc: dict = {}
    for p in roots:
        prod = _canonical(w * m + p.g + w + invert(p.g))
        acc[prod] = acc.get(prod, 0) + m * p.sign
    return FormalSum(acc)


def bracket_general(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, radius: int = DEFAULT_RADIUS) -> FormalSum:
    """``[x, y]`` for any pair, routing shared primitive roots to the supported shapes.

    Shared roots are handled only for ``[z^m, z]``, ``[z, z^m]`` and ``[y, y]``.
    """
    if x.is_empty() or y.is_empty():
        return FormalSum()
    (rx, p), (ry, q) = primitive_root(x), primitive_root(y)
    if not _shares_root(rx, ry):
        return bracket_sum(rep, x, y, radius)
    if x == y:
        return FormalSum()
    if rep.kind is SurfaceKind.PANTS and is_nonessential(rep, rx):
        return FormalSum()
    if y == rx and p >= 2 and x == power(rx, p):
        return bracket_power_self(rep, rx, p, radius)
    if x == rx and q >= 2 and y == power(rx, q):
        return -bracket_power_self(rep, rx, q, radius)
    raise Unsupported(
        f"[{x.letters}, {y.letters}]: brackets of two powers of one class are only computed "
        "in the shape [z^m, z]"
    )


def min_angle_point(points: list[TransversePoint]) -> TransversePoint:
    if not points:
        raise DomainError("min_angle_point needs at least one point")
    return min(points, key=lambda p: (p.angle, shortlex_key(p.coset_rep.letters)))


def clear_cache():
    _root_points_cached.cache_clear()
    _bracket_sum_cached.cache_clear()
