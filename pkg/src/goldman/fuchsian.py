"""Holonomy representations of the free group on ``a, b`` into PSL(2, R).

The default surface is the pair of pants: ``a`` and ``b`` go around two
boundary curves and ``ab`` around the third.  Sending all three boundary
traces below -2 gives a discrete faithful representation whose quotient is
a pants with geodesic boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError, Unsupported
from .hplane import MobiusMap, translation_length
from .words import CyclicWord, Word, cyclic_canonical, primitive_root


class SurfaceKind(enum.Enum):
    PANTS = "pants"
    TORUS = "torus"


# Boundary classes of the pants in canonical form, both orientations.
_PANTS_BOUNDARY = frozenset(cyclic_canonical(w) for w in ("a", "A", "b", "B", "ab", "BA"))

_LETTER_INDEX = {"a": 0, "A": 1, "b": 2, "B": 3}


@dataclass(frozen=True, eq=False)
class SurfaceRep:
    kind: SurfaceKind
    params: tuple[float, ...]
    gen_a: MobiusMap
    gen_b: MobiusMap
    tol: float = 1e-9
    # Entries of a conjugating matrix, empty for the standard chart.
    chart: tuple = ()
    # Generator matrices in letter order a, A, b, B (raw SL2 lifts).
    gens: np.ndarray = field(init=False, repr=False)
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        key = (self.kind.value,) + tuple(round(p, 12) for p in self.params) + self.chart
        object.__setattr__(self, "_key", key)
        A = self.gen_a.matrix
        B = self.gen_b.matrix
        inv = lambda m: np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
        object.__setattr__(self, "gens", np.stack([A, inv(A), B, inv(B)]))

    @property
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other):
        return isinstance(other, SurfaceRep) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def lengths(self) -> tuple[float, float, float]:
        if self.kind is not SurfaceKind.PANTS:
            raise Unsupported("boundary lengths are defined for the pants only")
        return self.params

    def conjugated(self, m: MobiusMap) -> "SurfaceRep":
        """The same surface seen through ``m``: generators ``m g m^-1``."""
        mi = m.inverse()
        ga = m @ self.gen_a @ mi
        gb = m @ self.gen_b @ mi
        chart = tuple(round(v, 12) for v in m.canonical())
        return SurfaceRep(self.kind, self.params, ga, gb, self.tol, self.chart + chart)

    def to_json(self) -> dict:
        out = {"surface": self.kind.value, "tol": self.tol}
        if self.kind is SurfaceKind.PANTS:
            out["lengths"] = list(self.params)
        else:
            out["traces"] = list(self.params)
        return out


def _from_traces(x: float, y: float, z: float, lam: float, mirror: int) -> tuple[MobiusMap, MobiusMap]:
    """A = diag(lam, 1/lam) and B with tr B = y, tr AB = z (closed form)."""
    if abs(lam - 1.0 / lam) < 1e-12:
        raise ConstructionError("generator a is not hyperbolic")
    p = (z - y / lam) / (lam - 1.0 / lam)
    s = y - p
    qr = p * s - 1.0
    if abs(qr) < 1e-12:
        raise ConstructionError(f"traces ({x}, {y}, {z}) give a reducible representation")
    q = mirror * math.sqrt(abs(qr))
    r = qr / q
    return MobiusMap._raw(lam, 0.0, 0.0, 1.0 / lam), MobiusMap._raw(p, q, r, s)


# Sign of the off-diagonal entry of rho(b).  The two choices are mirror
# images; this one makes [x^m, x] = m((Ba)^m aB - (aB)^m Ba) for x = aB.
_PANTS_MIRROR = -1


def pants_rep_from_traces(ta: float, tb: float, tab: float, tol: float = 1e-9) -> SurfaceRep:
    """Pants with ``tr a = ta``, ``tr b = tb``, ``tr ab = tab``, all below -2."""
    for name, t in (("a", ta), ("b", tb), ("ab", tab)):
        if not t < -2.0 - tol:
            raise DomainError(f"trace of {name} must be below -2, got {t}")
    lengths = tuple(2.0 * math.acosh(-t / 2.0) for t in (ta, tb, tab))
    return pants_rep(*lengths, tol=tol)


def pants_rep(l1: float, l2: float, l3: float, tol: float = 1e-9) -> SurfaceRep:
    """Pants whose boundary geodesics (a, b, ab) have lengths ``l1, l2, l3``."""
    for name, l in (("l1", l1), ("l2", l2), ("l3", l3)):
        if not (l > 0 and math.isfinite(l)):
            raise DomainError(f"boundary length {name} must be positive, got {l}")
    x, y, z = (-2.0 * math.cosh(l / 2.0) for l in (l1, l2, l3))
    lam = -math.exp(l1 / 2.0)
    ga, gb = _from_traces(x, y, z, lam, _PANTS_MIRROR)
    rep = SurfaceRep(SurfaceKind.PANTS, (float(l1), float(l2), float(l3)), ga, gb, tol)
    _check_pants(rep)
    return rep


def _check_pants(rep: SurfaceRep):
    ta = rep.gen_a.trace()
    tb = rep.gen_b.trace()
    tab = (rep.gen_a @ rep.gen_b).trace()
    for name, t, l in (("a", ta, rep.params[0]), ("b", tb, rep.params[1]), ("ab", tab, rep.params[2])):
        if not t <= -2.0 - rep.tol:
            raise ConstructionError(f"trace of {name} is {t}, expected below -2")
        if abs(2.0 * math.acosh(-t / 2.0) - l) > max(rep.tol, 1e-9 * l):
            raise ConstructionError(f"boundary {name} has length {2 * math.acosh(-t / 2)}, wanted {l}")


def torus_rep(x: float, y: float, tol: float = 1e-9) -> SurfaceRep:
    """Once-punctured torus from Markov traces: ``tr a = x``, ``tr b = y``, both > 2.

    ``tr ab`` is the larger root of ``x^2 + y^2 + z^2 = xyz``, which makes the
    commutator parabolic.  Only holonomy and lengths are supported here.
    """
    if not (x > 2 and y > 2):
        raise DomainError("torus traces must exceed 2")
    disc = (x * y) ** 2 - 4 * (x * x + y * y)
    if disc < 0:
        raise ConstructionError(f"no Markov triple with traces ({x}, {y})")
    z = 0.5 * (x * y + math.sqrt(disc))
    lam = 0.5 * (x + math.sqrt(x * x - 4))
    ga, gb = _from_traces(x, y, z, lam, 1)
    return SurfaceRep(SurfaceKind.TORUS, (float(x), float(y), float(z)), ga, gb, tol)


def holonomy_matrix(rep: SurfaceRep, letters: str) -> np.ndarray:
    m = np.eye(2)
    for c in letters:
        m = m @ rep.gens[_LETTER_INDEX[c]]
    return m


def holonomy(rep: SurfaceRep, w: Word | str) -> MobiusMap:
    letters = w.letters if isinstance(w, (Word, CyclicWord)) else w
    m = holonomy_matrix(rep, letters)
    return MobiusMap._raw(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def trace_length(t: float) -> float:
    return 2.0 * math.acosh(max(abs(t) / 2.0, 1.0))


def geodesic_length(rep: SurfaceRep, x: CyclicWord) -> float:
    if x.is_empty():
        raise DomainError("the constant loop has no geodesic")
    return translation_length(holonomy(rep, x.letters))


def is_nonessential(rep: SurfaceRep, x: CyclicWord) -> bool:
    """True for the constant loop and for powers of a boundary class."""
    if rep.kind is not SurfaceKind.PANTS:
        raise Unsupported(f"essential classes are not classified for surface {rep.kind.value!r}")
    if x.is_empty():
        return True
    return primitive_root(x)[0] in _PANTS_BOUNDARY


DEFAULT_TRACES = (-3.0, -3.0, -3.0)


def default_rep() -> SurfaceRep:
    return pants_rep_from_traces(*DEFAULT_TRACES)


def rep_from_config(cfg: dict) -> SurfaceRep:
    """Build a surface from ``{"surface": "pants", "lengths": [...]}`` style data.

    ``traces`` may be given instead of ``lengths``.  Missing fields fall back
    to the default pants.
    """
    surface = cfg.get("surface", "pants")
    tol = float(cfg.get("tol", 1e-9))
    if surface == "pants":
        if "lengths" in cfg:
            ls = [float(v) for v in cfg["lengths"]]
            if len(ls) != 3:
                raise DomainError("pants needs three boundary lengths")
            return pants_rep(*ls, tol=tol)
        ts = [float(v) for v in cfg.get("traces", DEFAULT_TRACES)]
        if len(ts) != 3:
            raise DomainError("pants needs three boundary traces")
        return pants_rep_from_traces(*ts, tol=tol)
    if surface == "torus":
        ts = [float(v) for v in cfg.get("traces", (3.0, 3.0))]
        return torus_rep(ts[0], ts[1], tol=tol)
    raise DomainError(f"unknown surface {surface!r}")
