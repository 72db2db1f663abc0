"""Zigzag curves built from a crossing of two closed geodesics, and their mirrors.

Starting at a lift ``P_0'`` of a crossing, alternately follow one turn of
``alpha`` then one turn of ``beta``.  With ``T`` the holonomy of ``alpha`` and
``h`` that of the conjugate of ``beta`` through ``P_0'``, the vertices are

    P_i'  = Phi^i P_0',     P_i'' = Phi^i T P_0',     Phi = T h,

and the segment midpoints ``M_j`` should lie on the axis ``L`` of ``Phi``.
``L`` comes from ``Phi`` alone, so collinearity is a real check.

All points live in a chart where ``L`` is the imaginary axis directed upward
and ``M_0 = i``: signed distance along ``L`` is ``log|z|`` and reflection in
the perpendicular through ``i r`` is ``z -> r^2 / conj(z)``.
``ZigzagCurve.chart`` maps the half-plane to these coordinates.

Vertices ``k`` periods out sit at distance about ``k * len`` from ``M_0``,
where double precision cannot place ``L`` to 1e-8, so construction and the
lemma checks run in mpmath with enough digits for that distance (at least
50).  Public fields hold floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import mpmath

from . import _mp
from .errors import DomainError
from .fuchsian import SurfaceRep
from .hplane import INF, DirectedGeodesic, MobiusMap, dist
from .intersect import TransversePoint
from .words import CyclicWord, _canonical, invert, primitive_root

DEFAULT_WINDOW = 3
CASE_TOL = 1e-9


class Case(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"
    XI = "XI"
    Iprime = "I'"
    IIprime = "II'"
    IIIprime = "III'"
    IVprime = "IV'"
    Vprime = "V'"
    VIprime = "VI'"
    VIIprime = "VII'"

    @property
    def primed(self) -> "Case":
        return Case(self.value + "'")

    @property
    def is_primed(self) -> bool:
        return self.value.endswith("'")


# Cases where the lines through R' and R-bar' are constructed directly.
COVERED = frozenset({
    Case.II, Case.III, Case.IV, Case.V, Case.VI, Case.VII, Case.XI,
    Case.IIprime, Case.IIIprime, Case.IVprime, Case.Vprime, Case.VIprime, Case.VIIprime,
})
# Cases where the two alpha-type segments cross; these need alpha = x^m, m >= 2.
SELF_CROSSING = frozenset({Case.I, Case.Iprime, Case.VIII})
# Coincidences with no smaller angle: the two zigzags overlap.
DEGENERATE = frozenset({Case.IX, Case.X})


def _digits(k: int, length: float) -> int:
    # Points reach distance ~ (k + 1) * length from M_0; errors grow like exp of it.
    return max(_mp.DPS, 30 + math.ceil(2 * (k + 1) * length / math.log(10)))


def _floats(d: dict) -> dict:
    return {i: _mp.to_complex(v) for i, v in d.items()}


@dataclass
class ZigzagCurve:
    base: TransversePoint
    alpha: CyclicWord
    beta: CyclicWord
    window: int
    chart: MobiusMap
    P1: dict  # P_i'  for i = -k..k
    P2: dict  # P_i'' for i = -k..k-1
    M: dict   # M_j for j = -2k..2k-1
    len_alpha: float
    len_beta: float
    len_product: float
    product: CyclicWord
    phi_P: float  # forward angle at the base crossing
    swapped: bool = False
    _ext: dict = field(default=None, repr=False, compare=False)

    @property
    def axisL(self) -> DirectedGeodesic:
        """The axis L in chart coordinates."""
        return DirectedGeodesic(0.0, INF)

    def axis_in_plane(self) -> DirectedGeodesic:
        return self.chart.inverse()(self.axisL)

    def to_plane(self, z: complex) -> complex:
        return self.chart.inverse()(z)

    def alpha_segments(self):
        k = self.window
        return [(self.P1[i], self.P2[i]) for i in range(-k, k)]

    def beta_segments(self):
        k = self.window
        return [(self.P2[i], self.P1[i + 1]) for i in range(-k, k)]

    def segment_residual(self) -> float:
        r = 0.0
        for p, q in self.alpha_segments():
            r = max(r, abs(dist(p, q) - self.len_alpha))
        for p, q in self.beta_segments():
            r = max(r, abs(dist(p, q) - self.len_beta))
        return r

    def collinearity_residual(self) -> float:
        """Largest hyperbolic distance from a midpoint to L."""
        return max(math.asinh(abs(z.real) / z.imag) for z in self.M.values())

    def spacing_residual(self) -> float:
        """Largest deviation of d(M_j, M_j+2) from the length of the product class."""
        k = self.window
        return max(abs(dist(self.M[j], self.M[j + 2]) - self.len_product) for j in range(-2 * k, 2 * k - 2))

    def swap(self) -> "ZigzagCurve":
        """The same zigzag read with alpha and beta exchanged.

        The new ``P_0'`` is the old ``P_0''`` and the new ``M_0`` the old ``M_1``.
        """
        e = self._ext
        with mpmath.workdps(e["dps"]):
            meta = dict(base=self.base, alpha=self.beta, beta=self.alpha, window=self.window,
                        len_alpha=self.len_beta, len_beta=self.len_alpha, len_product=self.len_product,
                        product=self.product, phi_P=self.phi_P, swapped=not self.swapped)
            return _assemble(e["P2"][0], e["Phi"] * _mp.inv(e["T"]), e["Phi"], e["chart"], meta)


def _assemble(P0, T, Phi, chart, meta) -> ZigzagCurve:
    # P0, T, Phi are given in a chart where L is the imaginary axis.
    k = meta["window"]
    # Rescale so that M_0 = i.
    r = mpmath.sqrt(abs(_mp.midpoint(P0, _mp.apply(T, P0))))
    S = mpmath.matrix([[1 / r, 0], [0, r]])
    Si = _mp.inv(S)
    T, Phi, chart = S * T * Si, S * Phi * Si, S * chart
    Phi_inv = _mp.inv(Phi)
    P1 = {0: _mp.apply(S, P0)}
    P2 = {0: _mp.apply(T, P1[0])}
    for i in range(1, k + 1):
        P1[i] = _mp.apply(Phi, P1[i - 1])
        P1[-i] = _mp.apply(Phi_inv, P1[1 - i])
        P2[-i] = _mp.apply(Phi_inv, P2[1 - i])
    for i in range(1, k):
        P2[i] = _mp.apply(Phi, P2[i - 1])
    M = {}
    for i in range(-k, k):
        M[2 * i] = _mp.midpoint(P1[i], P2[i])
        M[2 * i + 1] = _mp.midpoint(P2[i], P1[i + 1])
    ext = dict(P1=P1, P2=P2, M=M, T=T, Phi=Phi, chart=chart, dps=mpmath.mp.dps)
    return ZigzagCurve(chart=_mp.to_mobius(chart), P1=_floats(P1), P2=_floats(P2), M=_floats(M),
                       _ext=ext, **meta)


def _same_point(p: complex, q: complex) -> bool:
    return dist(p, q) <= 1e-4 or abs(p - q) <= 1e-12 * abs(p)


def build_zigzag(rep: SurfaceRep, alpha: CyclicWord, beta: CyclicWord, P: TransversePoint,
                 k: int = DEFAULT_WINDOW) -> ZigzagCurve:
    """Zigzag curve through the lift of ``P`` with ``k`` periods on each side of M_0."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise DomainError(f"window k must be an integer >= 2, got {k!r}")
    if alpha.is_empty() or beta.is_empty():
        raise DomainError("a zigzag needs two nontrivial classes")
    g = P.coset_rep.letters
    product = _canonical(alpha.letters + g + beta.letters + invert(g))
    lp = P.product_length if math.isfinite(P.product_length) else 0.0
    with mpmath.workdps(_digits(k, lp + 1.0)):
        gens = _mp.gens_of(rep)
        T = _mp.word(gens, alpha.letters)
        h = _mp.word(gens, g + beta.letters + invert(g))
        Phi = T * h
        for m in (T, h, Phi):
            if abs(m[0, 0] + m[1, 1]) <= 2:
                raise DomainError("a zigzag needs hyperbolic holonomies")
        c = _mp.cross(T, h)
        # The float lift is good to ~1e-6 on thin metrics, and deep lifts lose more
        # to rounding of the real part; the curve uses the exact crossing.
        if c is None or not _same_point(_mp.to_complex(c[0]), P.lift):
            raise DomainError("base point is not a crossing of the lifts of alpha and beta")
        K = _mp.frame(Phi)
        Ki = _mp.inv(K)
        meta = dict(base=P, alpha=alpha, beta=beta, window=k,
                    len_alpha=float(_mp.trace_length(T)), len_beta=float(_mp.trace_length(h)),
                    len_product=float(_mp.trace_length(Phi)), product=product, phi_P=float(c[1]))
        return _assemble(_mp.apply(K, c[0]), K * T * Ki, K * Phi * Ki, K, meta)


@dataclass
class ZigzagConfig:
    curve: ZigzagCurve
    u: float
    mirrorU: DirectedGeodesic
    mirrorV: DirectedGeodesic
    Q1: dict  # Q_i'
    Q2: dict  # Q_i''
    N: dict
    theta0: float
    a: float
    H: dict
    mode: str = "reflect"
    shift: float = 0.0
    _ext: dict = field(default=None, repr=False, compare=False)

    def reflected_segments(self):
        """Segments of the companion zigzag (alpha-type, beta-type) in chart coordinates."""
        alpha = [(self.Q1[i], self.Q2[i]) for i in sorted(self.Q1) if i in self.Q2]
        beta = [(self.Q2[i], self.Q1[i + 1]) for i in sorted(self.Q2) if i + 1 in self.Q1]
        return alpha, beta


def base_angle(len_alpha: float, len_beta: float, len_product: float) -> float:
    """theta0 predicted from the triangle M_0 P_0'' M_1 alone.

    Its sides are half of each length, so the law of cosines gives the angle
    at M_0; this is how obtuse configurations are found without building curves.
    """
    a, b, c = len_alpha / 2, len_beta / 2, len_product / 2
    cos_t = (math.cosh(a) * math.cosh(c) - math.cosh(b)) / (math.sinh(a) * math.sinh(c))
    return math.acos(max(-1.0, min(1.0, cos_t)))


def _local(z: ZigzagCurve):
    """theta0, a and the feet H_i, all in extended precision."""
    e = z._ext
    L = (mpmath.mpf(0), None)
    theta0 = _mp.line_meet(L, _mp.line(e["P1"][0], e["P2"][0]))[1]
    a = abs(mpmath.log(abs(e["P1"][0])) - mpmath.log(abs(e["M"][0])))
    H = {i: complex(0.0, float(abs(p))) for i, p in e["P1"].items()}
    return theta0, a, H


def make_config(z: ZigzagCurve, u: float) -> ZigzagConfig:
    """Reflect ``z`` in the perpendicular U_u to L at signed distance ``u`` past H_0.

    The companion is ``D_u = rho_U(C)^-1``: ``Q_i' = rho(P_-i'')``,
    ``Q_i'' = rho(P_-i')`` and ``N_i = rho(M_-i)``.
    """
    if not (0 < u <= z.len_product / 2 + CASE_TOL):
        raise DomainError(f"u must lie in (0, {z.len_product / 2:.6g}], got {u}")
    k = z.window
    e = z._ext
    with mpmath.workdps(e["dps"]):
        theta0, a, H = _local(z)
        sU = mpmath.log(abs(e["P1"][0])) + u
        r = mpmath.exp(sU)
        rV = mpmath.exp(sU + mpmath.mpf(z.len_product) / 2)
        refl = lambda w: r * r / mpmath.conj(w)
        Q1 = {i: refl(e["P2"][-i]) for i in range(-k + 1, k + 1)}
        Q2 = {i: refl(e["P1"][-i]) for i in range(-k, k + 1)}
        N = {j: refl(e["M"][-j]) for j in range(-(2 * k - 1), 2 * k + 1)}
        U = DirectedGeodesic(float(r), -float(r))
        V = DirectedGeodesic(float(rV), -float(rV))
        ext = dict(Q1=Q1, Q2=Q2, N=N, r=r, sU=sU)
        return ZigzagConfig(z, float(u), U, V, _floats(Q1), _floats(Q2), _floats(N),
                            float(theta0), float(a), H, _ext=ext)


def make_translate_config(z: ZigzagCurve, d: float) -> ZigzagConfig:
    """Companion obtained by sliding ``z`` a distance ``d`` along L.

    This is the picture for two crossings of the same sign; ``d = 0`` is the
    alignment case X.
    """
    if not (0 <= d < z.len_product):
        raise DomainError(f"shift must lie in [0, {z.len_product:.6g}), got {d}")
    e = z._ext
    with mpmath.workdps(e["dps"]):
        theta0, a, H = _local(z)
        s = mpmath.exp(d)
        Q1 = {i: s * p for i, p in e["P1"].items()}
        Q2 = {i: s * p for i, p in e["P2"].items()}
        N = {j: s * m for j, m in e["M"].items()}
        ext = dict(Q1=Q1, Q2=Q2, N=N)
        none = DirectedGeodesic(1.0, -1.0)
        return ZigzagConfig(z, 0.0, none, none, _floats(Q1), _floats(Q2), _floats(N),
                            float(theta0), float(a), H, mode="translate", shift=float(d), _ext=ext)


def _swapped_config(c: ZigzagConfig) -> ZigzagConfig:
    """The configuration seen from the swapped curve, with u reduced into (0, len/2]."""
    z2 = c.curve.swap()
    with mpmath.workdps(z2._ext["dps"]):
        # The two charts differ by a dilation; old P_0'' is new P_0'.
        sU = c._ext["sU"] + mpmath.log(abs(z2._ext["P1"][0]) / abs(c.curve._ext["P2"][0]))
        u = sU - mpmath.log(abs(z2._ext["P1"][0]))
    # Shifting U by len/2 moves D by len along L, which Phi undoes.
    half = z2.len_product / 2
    u = float(u) % half
    if u <= CASE_TOL * max(1.0, half):
        u = half
    return make_config(z2, u)


def _cmp(a: float, b: float, tol: float = CASE_TOL) -> int:
    if abs(a - b) <= tol * max(1.0, abs(a), abs(b)):
        return 0
    return -1 if a < b else 1


def _classify_unprimed(c: ZigzagConfig) -> Case:
    z = c.curve
    half = z.len_product / 2
    if _cmp(z.len_alpha, z.len_beta) == 0:
        return Case.IX if _cmp(c.u, half) == 0 else Case.VIII
    t = _cmp(c.theta0, math.pi / 2)
    if t < 0:
        if _cmp(c.u, 2 * c.a) == 0:
            return Case.II
        if _cmp(c.u, half) == 0:
            return Case.IV
        return Case.I if c.u < 2 * c.a else Case.III
    if t == 0:
        return Case.VI if _cmp(c.u, half) == 0 else Case.V
    return Case.VII


def classify_config(c: ZigzagConfig) -> Case:
    """Case label from the sign of len(alpha) - len(beta), theta0 against pi/2, and u."""
    z = c.curve
    if c.mode == "translate":
        return Case.X if _cmp(c.shift, 0.0) == 0 else Case.XI
    if _cmp(z.len_alpha, z.len_beta) > 0:
        return _classify_unprimed(_swapped_config(c)).primed
    return _classify_unprimed(c)


def _on_segment(p, q, x, tol=1e-12) -> bool:
    d = _mp.dist(p, q)
    return abs(_mp.dist(p, x) + _mp.dist(x, q) - d) <= tol * max(1, d)


def verify_segment_crossing(c: ZigzagConfig) -> bool:
    """Do the segments Q_0''Q_1' and P_0''P_1' cross transversely?"""
    z = c.curve
    if c.mode != "reflect":
        raise DomainError("the segment crossing is stated for reflected configurations")
    if _cmp(z.len_alpha, z.len_beta) > 0:
        raise DomainError("the segment crossing needs len(alpha) <= len(beta)")
    with mpmath.workdps(z._ext["dps"]):
        a0, a1 = c._ext["Q2"][0], c._ext["Q1"][1]
        b0, b1 = z._ext["P2"][0], z._ext["P1"][1]
        meet = _mp.line_meet(_mp.line(a0, a1), _mp.line(b0, b1))
        if meet is None:
            return False
        x = meet[0]
        return bool(_on_segment(a0, a1, x) and _on_segment(b0, b1, x))


@dataclass(frozen=True)
class SmallerAngle:
    Rprime: complex
    Rbar: complex
    phi: float
    phi_bar: float
    case: Case

    def to_json(self) -> dict:
        return {"case": self.case.value, "phi": self.phi, "phi_bar": self.phi_bar,
                "Rprime": [self.Rprime.real, self.Rprime.imag], "Rbar": [self.Rbar.real, self.Rbar.imag]}


def find_smaller_angle(c: ZigzagConfig) -> SmallerAngle | None:
    """Crossings R' and R-bar' of the curve with its companion, at a smaller angle.

    In the segment cases ``R'`` is where the line of Q_0'Q_0'' meets that of
    P_0''P_1', and ``R-bar'`` where Q_-1''Q_0' meets P_0'P_0''; points are in
    chart coordinates of the curve actually used (the swapped one for primed
    cases).  Cases I, I' and VIII go through a crossing of the two
    alpha-type segments, see :func:`_via_self_crossing`.  Returns ``None`` in
    the coincidence cases IX and X.
    """
    case = classify_config(c)
    if case in DEGENERATE:
        return None
    if case in SELF_CROSSING:
        return _via_self_crossing(c, case)
    work = _swapped_config(c) if case.is_primed else c
    P1, P2 = work.curve._ext["P1"], work.curve._ext["P2"]
    Q1, Q2 = work._ext["Q1"], work._ext["Q2"]
    with mpmath.workdps(work.curve._ext["dps"]):
        m1 = _mp.line_meet(_mp.line(Q1[0], Q2[0]), _mp.line(P2[0], P1[1]))
        m2 = _mp.line_meet(_mp.line(P1[0], P2[0]), _mp.line(Q2[-1], Q1[0]))
        if m1 is None or m2 is None:
            raise DomainError(f"expected crossings not found in case {case.value}")
        return SmallerAngle(_mp.to_complex(m1[0]), _mp.to_complex(m2[0]), float(m1[1]), float(m2[1]), case)


def _segment_meet(p, q, L):
    """Meet of the segment pq with the directed line L: (point, angle) or None."""
    m = _mp.line_meet(L, _mp.line(p, q))
    if m is None or not _on_segment(p, q, m[0]):
        return None
    return m[0], m[1]


def _slide(p, q, t):
    """Translation by t along the directed line through p and q."""
    F = _mp.line_frame(_mp.line(p, q))
    D = mpmath.matrix([[mpmath.exp(t / 2), 0], [0, mpmath.exp(-t / 2)]])
    return _mp.inv(F) * D * F


def _via_self_crossing(c: ZigzagConfig, case: Case) -> SmallerAngle:
    """Smaller angle from a self-crossing of the root class of alpha.

    With ``alpha = x^m`` and an alpha-segment of C crossing one of the
    companion at S', the other lifts of that crossing sit at multiples of
    ``len(x)`` along the C segment.  Sliding the companion's alpha line there
    gives a lift L_x of ``x``; its first crossing with a beta-type segment has
    a smaller angle than P.  R-bar' is the mirror image of R'.
    """
    z = c.curve
    root, m = primitive_root(z.alpha)
    if m < 2:
        raise DomainError(f"case {case.value} needs alpha to be a proper power, got {z.alpha.letters}")
    P1, P2 = z._ext["P1"], z._ext["P2"]
    Q1, Q2 = c._ext["Q1"], c._ext["Q2"]
    with mpmath.workdps(z._ext["dps"]):
        step = mpmath.mpf(z.len_alpha) / m
        r = c._ext["r"]
        refl = lambda w: r * r / mpmath.conj(w)
        ca = [(P1[i], P2[i]) for i in sorted(P2) if i in P1]
        da = [(Q1[i], Q2[i]) for i in sorted(Q1) if i in Q2]
        beta = [(P2[i], P1[i + 1]) for i in sorted(P2) if i + 1 in P1]
        beta += [(Q2[i], Q1[i + 1]) for i in sorted(Q2) if i + 1 in Q1]
        best = None
        for p, q in ca:
            for s, t in da:
                if _segment_meet(p, q, _mp.line(s, t)) is None:
                    continue
                for j in list(range(1, m)) + list(range(-m + 1, 0)):
                    tau = _slide(p, q, j * step)
                    s2, t2 = _mp.apply(tau, s), _mp.apply(tau, t)
                    Lx = _mp.line(s2, t2)
                    for b0, b1 in beta:
                        hit = _segment_meet(b0, b1, Lx)
                        if hit is not None and (best is None or hit[1] < best[1]):
                            best = (hit[0], hit[1], s2, t2, b0, b1)
        if best is None:
            raise DomainError(f"no crossing of a lift of {root.letters} found in case {case.value}")
        R, phi, s2, t2, b0, b1 = best
        mirror = _mp.line_meet(_mp.line(refl(t2), refl(s2)), _mp.line(refl(b1), refl(b0)))
        if mirror is None:
            raise DomainError("mirror image of R' not found")
        return SmallerAngle(_mp.to_complex(R), _mp.to_complex(mirror[0]), float(phi), float(mirror[1]), case)


from ._svg import render_svg  # noqa: E402,F401
