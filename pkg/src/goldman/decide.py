"""Decision procedures built on the bracket: separability, simplicity, center probe.

Every verdict is computed from geodesic intersection data and then compared
with what the bracket says, so each record carries both sides.  On the pants,
non-essential classes (powers of the three boundary curves) are disjoint from
everything and are settled combinatorially, never by search.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, Unsupported
from .fuchsian import SurfaceKind, SurfaceRep, is_nonessential
from .intersect import (
    DEFAULT_RADIUS,
    TransversePoint,
    bracket_general,
    bracket_power_self,
    intersection_number,
    self_intersection_points,
    transverse_points,
)
from .words import CyclicWord, FormalSum, parse_cyclic, power, primitive_root, same_root_up_to_inversion

PROBE = "aB"


class Method(enum.Enum):
    NON_ESSENTIAL = "NonEssential"
    SHARED_PRIMITIVE_ROOT = "SharedPrimitiveRoot"
    GEODESIC_COUNT = "GeodesicCount"


def _nonessential(rep: SurfaceRep, x: CyclicWord) -> bool:
    if x.is_empty():
        return True
    return rep.kind is SurfaceKind.PANTS and is_nonessential(rep, x)


def bracket_of(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, radius: int = DEFAULT_RADIUS) -> FormalSum:
    """``[x, y]`` for any pair this library can evaluate.

    Non-essential classes give zero.  Shared primitive roots are handled for
    ``x == y`` and the ``[z^m, z]`` shapes; anything else raises Unsupported.
    """
    if _nonessential(rep, x) or _nonessential(rep, y):
        return FormalSum()
    return bracket_general(rep, x, y, radius)


@dataclass(frozen=True)
class SeparabilityVerdict:
    separable: bool
    intersection_count: int
    witness_points: tuple = ()
    method: Method = Method.GEODESIC_COUNT

    def __post_init__(self):
        if self.separable != (self.intersection_count == 0):
            raise AssertionError("separable must match a zero intersection count")

    def to_json(self) -> dict:
        return {
            "separable": self.separable,
            "intersection_count": self.intersection_count,
            "method": self.method.value,
            "witness_points": [p.to_json() for p in self.witness_points],
        }


def decide_separable(rep: SurfaceRep, x: CyclicWord, y: CyclicWord,
                     radius: int = DEFAULT_RADIUS) -> SeparabilityVerdict:
    """Whether ``x`` and ``y`` have disjoint representatives.

    For ``x = z^p`` and ``y = z^q`` the witnesses are the self-crossings of
    ``z``; each one splits into ``2 p q`` crossings after pushing one curve off.
    """
    if _nonessential(rep, x) or _nonessential(rep, y):
        return SeparabilityVerdict(True, 0, (), Method.NON_ESSENTIAL)
    if same_root_up_to_inversion(x, y):
        z = primitive_root(x)[0]
        n = intersection_number(rep, x, y, radius)
        pts = tuple(self_intersection_points(rep, z, radius)) if n else ()
        return SeparabilityVerdict(n == 0, n, pts, Method.SHARED_PRIMITIVE_ROOT)
    pts = tuple(transverse_points(rep, x, y, radius))
    return SeparabilityVerdict(not pts, len(pts), pts, Method.GEODESIC_COUNT)


@dataclass(frozen=True)
class WSCVerdict:
    bracket_zero: bool
    i_zero: bool
    y_eq_xm: bool

    @property
    def consistent(self) -> bool:
        return self.bracket_zero == (self.i_zero or self.y_eq_xm)

    def to_json(self) -> dict:
        return {"bracket_zero": self.bracket_zero, "i_zero": self.i_zero,
                "y_eq_xm": self.y_eq_xm, "consistent": self.consistent}


def _power(x: CyclicWord, m: int) -> CyclicWord:
    return x if x.is_empty() else power(x, m)


def wsc_verdict(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, m: int,
                radius: int = DEFAULT_RADIUS) -> WSCVerdict:
    """Both sides of: ``[x^m, y] = 0`` iff ``i(x, y) = 0`` or ``y = x^m`` (``m >= 2``)."""
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    xm = _power(x, m)
    y_eq = y == xm
    b = FormalSum() if y_eq else bracket_of(rep, xm, y, radius)
    return WSCVerdict(b.is_zero(), intersection_number(rep, x, y, radius) == 0, y_eq)


@dataclass(frozen=True)
class SSCConditions:
    """The four separability conditions; ``None`` marks one outside the computable scope."""

    cond1: bool
    cond2: bool | None
    cond3: bool | None
    cond4: bool | None

    @property
    def values(self) -> tuple:
        return (self.cond1, self.cond2, self.cond3, self.cond4)

    @property
    def agree(self) -> bool:
        known = {v for v in self.values if v is not None}
        return len(known) == 1

    def to_json(self) -> dict:
        return {"cond1": self.cond1, "cond2": self.cond2, "cond3": self.cond3,
                "cond4": self.cond4, "agree": self.agree}


def _zero_or_none(f):
    try:
        return f()
    except Unsupported:
        return None


def _both(p, q):
    if p is False or q is False:
        return False
    if p is None or q is None:
        return None
    return True


def ssc_conditions(rep: SurfaceRep, x: CyclicWord, y: CyclicWord, m1: int, m2: int,
                   c1=1, c2=1, radius: int = DEFAULT_RADIUS) -> SSCConditions:
    """Evaluate the four equivalent conditions for ``i(x, y) = 0`` at the given parameters.

    cond2 uses ``[x^m1, y]`` and ``[x^m2, y]``, cond3 uses ``[x^m1, y]`` and
    ``[x, y^m2]``, cond4 uses ``[x^M, c1 y + c2 y^-1]`` with ``M = max(2, m1)``.
    """
    for name, m in (("m1", m1), ("m2", m2)):
        if not isinstance(m, int) or m < 1:
            raise DomainError(f"{name} must be a positive integer, got {m!r}")
    if m1 == m2:
        raise DomainError("m1 and m2 must be distinct")
    c1, c2 = Fraction(c1), Fraction(c2)
    if c1 == 0 or c2 == 0:
        raise DomainError("c1 and c2 must be nonzero")

    def zero(a, b):
        if a == b:
            return True
        return bracket_of(rep, a, b, radius).is_zero()

    first = _zero_or_none(lambda: zero(_power(x, m1), y))
    cond2 = _both(first, _zero_or_none(lambda: zero(_power(x, m2), y)))
    cond3 = _both(first, _zero_or_none(lambda: zero(x, _power(y, m2))))
    big = max(2, m1)

    def comb():
        xm = _power(x, big)
        s = bracket_of(rep, xm, y, radius).scale(c1)
        if not y.is_empty():
            s = s + bracket_of(rep, xm, y.inverse(), radius).scale(c2)
        return s.is_zero()

    cond4 = _zero_or_none(comb)
    return SSCConditions(intersection_number(rep, x, y, radius) == 0, cond2, cond3, cond4)


def is_simple(rep: SurfaceRep, x: CyclicWord, radius: int = DEFAULT_RADIUS) -> bool:
    """Whether the primitive class ``x`` has a simple representative."""
    if x.is_empty():
        return True
    if primitive_root(x)[1] != 1:
        raise DomainError(f"{x.letters} is not primitive")
    if _nonessential(rep, x):
        return True
    return not self_intersection_points(rep, x, radius)


@dataclass(frozen=True)
class Witness:
    m: int
    bracket: FormalSum
    against: CyclicWord

    def to_json(self) -> dict:
        return {"m": self.m, "bracket": self.bracket.to_json(), "against": self.against.letters}


@dataclass(frozen=True)
class CenterVerdict:
    central_candidate: bool
    witness: Witness | None = None
    bound: int = 0
    tested: tuple = field(default=())

    def __post_init__(self):
        if self.central_candidate != (self.witness is None):
            raise AssertionError("central_candidate must match a missing witness")

    def to_json(self) -> dict:
        return {
            "central_candidate": self.central_candidate,
            "witness": None if self.witness is None else self.witness.to_json(),
            "bound": self.bound,
            "tested_m": list(self.tested),
        }


def center_probe(rep: SurfaceRep, combo, radius: int = DEFAULT_RADIUS, probe: str = PROBE) -> CenterVerdict:
    """Look for ``m <= I + 1`` with ``[x^m, sum c_j y_j] != 0``, ``x`` the figure-eight.

    ``I`` is the sum of ``i(x, y_j)``.  A bracket against a combination that
    depends on an uncomputable shared-root shape raises Unsupported.
    """
    x = parse_cyclic(probe)
    terms = []
    seen = set()
    for c, y in combo:
        c = Fraction(c)
        if c == 0:
            raise DomainError("coefficients must be nonzero")
        if y in seen:
            raise DomainError(f"{y.letters or '1'} appears twice in the combination")
        seen.add(y)
        terms.append((c, y))
    bound = sum(intersection_number(rep, x, y, radius) for _, y in terms) + 1
    tested = []
    for m in range(1, bound + 1):
        xm = _power(x, m)
        s = FormalSum()
        for c, y in terms:
            if y != xm:
                s = s + bracket_of(rep, xm, y, radius).scale(c)
        tested.append(m)
        if not s.is_zero():
            return CenterVerdict(False, Witness(m, s, x), bound, tuple(tested))
    return CenterVerdict(True, None, bound, tuple(tested))


def parse_combo(text: str) -> list[tuple[Fraction, CyclicWord]]:
    """Parse ``"2*aaa, -1*ab"`` (a bare word means coefficient 1)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "*" in part:
            c, w = part.split("*", 1)
            try:
                coeff = Fraction(c.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise DomainError(f"bad coefficient {c.strip()!r}") from e
        else:
            coeff, w = Fraction(1), part
        out.append((coeff, parse_cyclic(w.strip())))
    if not out:
        raise DomainError("empty combination")
    return out
