"""Upper half-plane geometry: Mobius isometries, directed geodesics, reflections.

Points of the half-plane are Python ``complex`` numbers with positive imaginary
part.  Ideal points are real floats or the :data:`INF` marker.

Most constructions go through a *frame*: the orientation-preserving isometry
sending a directed geodesic to the imaginary axis ``0 -> inf``.  In that chart
distances along the geodesic are logarithms of heights and nearly everything
becomes a one-line formula, which keeps rounding error small even for points
far out along long words.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateConfiguration, DomainError


@dataclass
class Tolerances:
    classify: float = 1e-9     # on |trace| - 2
    coincidence: float = 1e-8  # geometric equality of points and endpoints
    tangency: float = 1e-6     # crossing angles this close to 0 or pi are refused


TOL = Tolerances()


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _homog(x) -> np.ndarray:
    if x is INF:
        return np.array([1.0, 0.0])
    return np.array([float(x), 1.0])


def _from_homog(v, tol=1e-300):
    u, w = float(v[0]), float(v[1])
    if abs(w) <= tol * max(abs(u), 1e-300) or w == 0.0:
        return INF
    return u / w


def check_point(z: complex) -> complex:
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"point {z} is not in the upper half-plane")
    return z


class Kind(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class MobiusMap:
    """An element of SL(2, R) acting on the half-plane by ``z -> (az+b)/(cz+d)``.

    The matrix is rescaled to determinant 1 but its sign is kept, so a map can
    serve as a lift to SL(2, R) (pants traces are negative).  Equality and
    hashing are projective: ``g`` and ``-g`` compare equal.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b=None, c=None, d=None):
        if b is None:
            m = np.asarray(a, dtype=float)
            a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        a, b, c, d = float(a), float(b), float(c), float(d)
        det = a * d - b * c
        if not det > 0:
            raise DomainError(f"matrix determinant must be positive, got {det}")
        s = math.sqrt(det)
        self.a, self.b, self.c, self.d = a / s, b / s, c / s, d / s

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def _raw(cls, a, b, c, d):
        obj = object.__new__(cls)
        obj.a, obj.b, obj.c, obj.d = float(a), float(b), float(c), float(d)
        return obj

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def trace(self) -> float:
        return self.a + self.d

    def canonical(self) -> tuple[float, float, float, float]:
        """Entries with the projective sign fixed (trace >= 0, else first nonzero > 0)."""
        t = self.a + self.d
        flip = t < 0
        if t == 0:
            for e in (self.a, self.b, self.c, self.d):
                if e != 0:
                    flip = e < 0
                    break
        if flip:
            return (-self.a, -self.b, -self.c, -self.d)
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other):
        if isinstance(other, AntiMobius):
            return other.__rmatmul__(self)
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MobiusMap._raw(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __pow__(self, n: int):
        out = MobiusMap.identity()
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def inverse(self):
        return MobiusMap._raw(self.d, -self.b, -self.c, self.a)

    def __call__(self, z):
        if isinstance(z, DirectedGeodesic):
            return DirectedGeodesic(self.boundary(z.source), self.boundary(z.target))
        z = complex(z)
        return complex((self.a * z + self.b) / (self.c * z + self.d))

    def boundary(self, x):
        """Action on an ideal point (a float or :data:`INF`)."""
        return _from_homog(self.matrix @ _homog(x))

    def isclose(self, other, tol=1e-9) -> bool:
        p = np.array(self.canonical())
        q = np.array(other.canonical())
        return bool(np.max(np.abs(p - q)) <= tol * max(1.0, np.max(np.abs(p))))

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return self.isclose(other, 1e-12)

    def __hash__(self):
        return hash(tuple(round(e, 9) for e in self.canonical()))

    def __repr__(self):
        return f"MobiusMap([[{self.a:.6g}, {self.b:.6g}], [{self.c:.6g}, {self.d:.6g}]])"


class AntiMobius:
    """Orientation-reversing isometry ``z -> (a conj(z) + b)/(c conj(z) + d)``, det -1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        det = a * d - b * c
        if not det < 0:
            raise DomainError("anti-isometry matrix must have negative determinant")
        s = math.sqrt(-det)
        self.a, self.b, self.c, self.d = a / s, b / s, c / s, d / s

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __call__(self, z):
        if isinstance(z, DirectedGeodesic):
            return DirectedGeodesic(self.boundary(z.source), self.boundary(z.target))
        w = complex(z).conjugate()
        return complex((self.a * w + self.b) / (self.c * w + self.d))

    def boundary(self, x):
        return _from_homog(self.matrix @ _homog(x))

    def _compose(self, m: np.ndarray, anti: bool):
        a, b, c, d = m.ravel()
        if anti:
            return AntiMobius(a, b, c, d)
        return MobiusMap(a, b, c, d)

    def __matmul__(self, other):
        # conj(M z) = M conj(z) for real M, so composition is the matrix product.
        if isinstance(other, AntiMobius):
            return self._compose(self.matrix @ other.matrix, anti=False)
        return self._compose(self.matrix @ other.matrix, anti=True)

    def __rmatmul__(self, other: MobiusMap):
        return self._compose(other.matrix @ self.matrix, anti=True)


@dataclass(frozen=True)
class DirectedGeodesic:
    """Geodesic from ideal point ``source`` to ideal point ``target``."""

    source: float | _Infinity
    target: float | _Infinity

    def __post_init__(self):
        if self.source is self.target or (
            self.source is not INF and self.target is not INF and self.source == self.target
        ):
            raise DomainError("geodesic endpoints must differ")

    def reversed(self) -> "DirectedGeodesic":
        return DirectedGeodesic(self.target, self.source)

    def is_vertical(self) -> bool:
        return self.source is INF or self.target is INF

    def to_json(self) -> dict:
        enc = lambda x: "inf" if x is INF else x
        return {"source": enc(self.source), "target": enc(self.target)}

    def tangent(self, z: complex) -> complex:
        """Euclidean unit tangent, in the direction of travel, at a point of the geodesic."""
        if self.source is INF:
            return -1j
        if self.target is INF:
            return 1j
        c = 0.5 * (self.source + self.target)
        t = complex(z.imag, -(z.real - c))
        if self.target < self.source:
            t = -t
        return t / abs(t)


def line_through(p: complex, q: complex) -> DirectedGeodesic:
    """Directed geodesic through ``p`` then ``q``."""
    if p == q:
        raise DomainError("line_through needs distinct points")
    dx = q.real - p.real
    scale = max(abs(p), abs(q))
    if abs(dx) <= 1e-15 * scale:
        return DirectedGeodesic(p.real, INF) if q.imag > p.imag else DirectedGeodesic(INF, p.real)
    c = (abs(q) ** 2 - abs(p) ** 2) / (2 * dx)
    r = abs(p - c)
    return DirectedGeodesic(c - r, c + r) if dx > 0 else DirectedGeodesic(c + r, c - r)


def frame(L: DirectedGeodesic) -> MobiusMap:
    """Isometry taking ``L`` to the imaginary axis, source to 0 and target to inf."""
    t = _homog(L.target)
    s = _homog(L.source)
    if t[0] * s[1] - s[0] * t[1] < 0:
        s = -s
    E = np.column_stack([t, s])
    return MobiusMap(E).inverse()


def frame_at(L: DirectedGeodesic, origin: complex) -> MobiusMap:
    """Like :func:`frame`, additionally sending the foot of ``origin`` on ``L`` to ``i``."""
    K = frame(L)
    h = abs(K(origin))
    return MobiusMap(1.0 / math.sqrt(h), 0.0, 0.0, math.sqrt(h)) @ K


def dist(p: complex, q: complex) -> float:
    """Hyperbolic distance; the asinh form stays accurate for nearby points."""
    p, q = complex(p), complex(q)
    return 2.0 * math.asinh(abs(p - q) / (2.0 * math.sqrt(p.imag * q.imag)))


def midpoint(p: complex, q: complex) -> complex:
    if p == q:
        return p
    L = line_through(p, q)
    K = frame(L)
    hp, hq = abs(K(p)), abs(K(q))
    return K.inverse()(1j * math.sqrt(hp * hq))


def classify(g: MobiusMap, tol: float | None = None) -> Kind:
    tol = TOL.classify if tol is None else tol
    if g.isclose(MobiusMap.identity(), tol):
        return Kind.IDENTITY
    t = abs(g.trace())
    if t > 2 + tol:
        return Kind.HYPERBOLIC
    if t >= 2 - tol:
        return Kind.PARABOLIC
    return Kind.ELLIPTIC


def _require_hyperbolic(g: MobiusMap, what="map"):
    if classify(g) is not Kind.HYPERBOLIC:
        raise DomainError(f"{what} is not hyperbolic (trace {g.trace():.12g})")


def translation_length(g: MobiusMap) -> float:
    _require_hyperbolic(g)
    return 2.0 * math.acosh(abs(g.trace()) / 2.0)


def axis(g: MobiusMap) -> DirectedGeodesic:
    """Axis of a hyperbolic map, directed from repelling to attracting fixed point."""
    _require_hyperbolic(g)
    vals, vecs = np.linalg.eig(g.matrix)
    vals = vals.real
    vecs = vecs.real
    att = int(np.argmax(np.abs(vals)))
    return DirectedGeodesic(_from_homog(vecs[:, 1 - att]), _from_homog(vecs[:, att]))


def geodesic_meet(L1: DirectedGeodesic, L2: DirectedGeodesic) -> tuple[complex, float] | None:
    """Transverse crossing of two geodesics and the forward angle from L1 to L2.

    Returns ``None`` for disjoint, asymptotic or equal geodesics.
    """
    K = frame(L1)
    f0 = K.matrix @ _homog(L2.source)
    f1 = K.matrix @ _homog(L2.target)
    f0 = f0 / np.linalg.norm(f0)
    f1 = f1 / np.linalg.norm(f1)
    eps = 1e-14
    if min(abs(f0[0]), abs(f0[1]), abs(f1[0]), abs(f1[1])) <= eps:
        return None
    x0, x1 = f0[0] / f0[1], f1[0] / f1[1]
    if x0 * x1 >= 0:
        return None
    h = math.sqrt(-x0 * x1)
    # In this chart L1 points straight up; L2 is a half-circle over [x0, x1].
    cosphi = (x0 + x1) / (x1 - x0)
    sinphi = 2.0 * h / abs(x1 - x0)
    phi = math.atan2(sinphi, cosphi)
    return K.inverse()(1j * h), phi


def crossing_sign(L1: DirectedGeodesic, L2: DirectedGeodesic, p: complex) -> int:
    """+1 when (tangent of L1, tangent of L2) is a positively oriented frame at p."""
    t1, t2 = L1.tangent(p), L2.tangent(p)
    cross = t1.real * t2.imag - t1.imag * t2.real
    return 1 if cross > 0 else -1


def forward_angle(L1: DirectedGeodesic, L2: DirectedGeodesic, p: complex) -> float:
    """Angle in [0, pi] between the directions of L1 and L2 at a common point."""
    t1, t2 = L1.tangent(p), L2.tangent(p)
    dot = t1.real * t2.real + t1.imag * t2.imag
    cross = t1.real * t2.imag - t1.imag * t2.real
    return math.atan2(abs(cross), dot)


def reflect(L: DirectedGeodesic) -> AntiMobius:
    """Reflection across ``L``: an involution fixing ``L`` pointwise."""
    K = frame(L)
    R0 = np.array([[-1.0, 0.0], [0.0, 1.0]])
    m = K.inverse().matrix @ R0 @ K.matrix
    return AntiMobius(*m.ravel())


def perpendicular_foot(L: DirectedGeodesic, p: complex) -> complex:
    K = frame(L)
    return K.inverse()(1j * abs(K(check_point(p))))


def signed_position(L: DirectedGeodesic, origin: complex, p: complex) -> float:
    """Signed distance along ``L`` from the foot of ``origin`` to the foot of ``p``."""
    K = frame(L)
    return math.log(abs(K(p)) / abs(K(origin)))


def point_at(L: DirectedGeodesic, origin: complex, s: float) -> complex:
    """Point of ``L`` at signed distance ``s`` (positive toward the target) from ``origin``.

    ``origin`` is projected onto ``L`` first.
    """
    K = frame(L)
    h = abs(K(check_point(origin)))
    return K.inverse()(1j * h * math.exp(s))


def perpendicular_at(L: DirectedGeodesic, origin: complex, s: float) -> DirectedGeodesic:
    """Geodesic orthogonal to ``L`` at ``point_at(L, origin, s)``, crossing it right to left."""
    K = frame(L)
    r = abs(K(check_point(origin))) * math.exp(s)
    Ki = K.inverse()
    return DirectedGeodesic(Ki.boundary(r), Ki.boundary(-r))


def half_turn(v: complex) -> MobiusMap:
    """Rotation of order two about ``v``."""
    v = check_point(v)
    sy = math.sqrt(v.imag)
    S = MobiusMap(sy, v.real / sy, 0.0, 1.0 / sy)
    return S @ MobiusMap(0.0, -1.0, 1.0, 0.0) @ S.inverse()


def translation(L: DirectedGeodesic, t: float) -> MobiusMap:
    """Hyperbolic map with axis ``L`` and translation length ``t``."""
    K = frame(L)
    e = math.exp(t / 2)
    return K.inverse() @ MobiusMap(e, 0.0, 0.0, 1.0 / e) @ K


@dataclass
class CoshCheck:
    t_g: float
    t_h: float
    theta: float
    t_gh: float
    residual: float
    relative_residual: float
    point: complex = field(default=0j)


def compose_check_cosh(g: MobiusMap, h: MobiusMap) -> CoshCheck:
    """Evaluate the composition law for translations with crossing axes."""
    _require_hyperbolic(g, "g")
    _require_hyperbolic(h, "h")
    meet = geodesic_meet(axis(g), axis(h))
    if meet is None:
        raise DomainError("axes of g and h do not cross transversely")
    p, theta = meet
    tg, th = translation_length(g), translation_length(h)
    gh = g @ h
    _require_hyperbolic(gh, "gh")
    tgh = translation_length(gh)
    lhs = abs(gh.trace()) / 2.0
    rhs = math.cosh(tg / 2) * math.cosh(th / 2) + math.sinh(tg / 2) * math.sinh(th / 2) * math.cos(theta)
    res = abs(lhs - rhs)
    return CoshCheck(tg, th, theta, tgh, res, res / lhs, p)


def two_reflection_decomposition(g: MobiusMap, L1: DirectedGeodesic | None = None):
    """Return ``(L1, L2)`` with ``g = reflect(L2) @ reflect(L1)``.

    ``L1`` defaults to the perpendicular to the axis through the foot of ``i``.
    """
    A = axis(g)
    t = translation_length(g)
    if L1 is None:
        L1 = perpendicular_at(A, 1j, 0.0)
    else:
        meet = geodesic_meet(A, L1)
        if meet is None or abs(meet[1] - math.pi / 2) > 1e-8:
            raise DomainError("L1 must be orthogonal to the axis of g")
    foot = geodesic_meet(A, L1)[0]
    L2 = perpendicular_at(A, foot, t / 2)
    return L1, L2


def two_rotation_decomposition(g: MobiusMap, basepoint: complex | None = None):
    """Return ``(v1, v2)`` on the axis with ``g = half_turn(v2) @ half_turn(v1)``."""
    A = axis(g)
    t = translation_length(g)
    v1 = perpendicular_foot(A, 1j if basepoint is None else basepoint)
    if basepoint is not None and dist(v1, basepoint) > TOL.coincidence:
        raise DomainError("basepoint must lie on the axis of g")
    v2 = point_at(A, v1, t / 2)
    return v1, v2


def check_transverse(phi: float, what: str = "crossing"):
    if phi < TOL.tangency or phi > math.pi - TOL.tangency:
        raise DegenerateConfiguration(f"{what} angle {phi:.3e} is too close to tangency")
