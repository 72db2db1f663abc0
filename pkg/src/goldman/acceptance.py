"""The acceptance suite: ten end-to-end checks, each returning a pass/fail record.

Run with ``python -m goldman.acceptance`` or ``goldman selftest``.  Every
check is deterministic (fixed seeds).  Criteria 7 and 8 share one sweep over
all ordered pairs of classes of length at most 6, so running them together
is much cheaper than running them apart.
"""

from __future__ import annotations

import math
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, decide, zigzag
from .fuchsian import is_nonessential, pants_rep_from_traces
from .hplane import DirectedGeodesic, MobiusMap, compose_check_cosh, translation
from .intersect import (
    bracket_power_self,
    bracket_sum,
    self_intersection_points,
    transverse_points,
)
from .words import (
    CyclicWord,
    FormalSum,
    cyclic_canonical,
    cyclic_words,
    parse_cyclic,
    power,
    primitive_root,
    same_root_up_to_inversion,
)

METRICS = ((-3.0, -3.0, -3.0), (-3.0, -4.0, -5.0))
CORPUS_LENGTH = 6
SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict, repr=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _reps():
    return [pants_rep_from_traces(*t) for t in METRICS]


def _essential(rep, max_length, min_length=1):
    return [w for w in cyclic_words(max_length, min_length) if not is_nonessential(rep, w)]


def _distinct_pairs(words):
    for x in words:
        for y in words:
            if not same_root_up_to_inversion(x, y):
                yield x, y


# 1 -----------------------------------------------------------------------

def expected_power_bracket(m: int) -> FormalSum:
    """m((b^-1 a)^m a b^-1 - (a b^-1)^m b^-1 a) for the figure-eight aB."""
    w1 = cyclic_canonical("Ba" * m + "aB")
    w2 = cyclic_canonical("aB" * m + "Ba")
    return FormalSum({w1: m, w2: -m})


def criterion_1() -> CriterionResult:
    _kernels.warmup()
    rep = pants_rep_from_traces(*METRICS[0])
    x = parse_cyclic("aB")
    t0 = time.perf_counter()
    ok, distinct = True, True
    for m in (2, 3, 4, 5):
        got = bracket_power_self(rep, x, m)
        exp = expected_power_bracket(m)
        ok &= got == exp
        distinct &= len(exp) == 2
    dt = time.perf_counter() - t0
    passed = ok and distinct and dt < 1.0
    return CriterionResult(1, "power bracket of the figure-eight", passed,
                           f"exact={ok} distinct_terms={distinct} time={dt:.3f}s")


# 2 -----------------------------------------------------------------------

def _line_with_tangent(p: complex, t: float) -> DirectedGeodesic:
    # The centre c of the circle satisfies (p - c) . e^{it} = 0.
    c = p.real + p.imag * math.tan(t)
    r = abs(p - c)
    return DirectedGeodesic(c - r, c + r) if math.cos(t) > 0 else DirectedGeodesic(c + r, c - r)


def random_crossing_pair(rng: np.random.Generator):
    """Two translations whose axes cross at a random point and angle."""
    p = complex(rng.uniform(-3, 3), math.exp(rng.uniform(-2, 2)))
    while True:
        t1, t2 = rng.uniform(0, math.pi, 2)
        if 0.05 < abs(t1 - t2) < math.pi - 0.05 and min(abs(t1 - math.pi / 2), abs(t2 - math.pi / 2)) > 1e-3:
            break
    a, b = rng.uniform(0.1, 5.0, 2)
    return translation(_line_with_tangent(p, t1), a), translation(_line_with_tangent(p, t2), b)


def criterion_2(n: int = 1000) -> CriterionResult:
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        g, h = random_crossing_pair(rng)
        worst = max(worst, compose_check_cosh(g, h).relative_residual)
    dt = time.perf_counter() - t0
    return CriterionResult(2, "composition law for crossing translations", worst < 1e-9 and dt < 1.0,
                           f"{n} pairs, max relative residual {worst:.2e}, time={dt:.3f}s")


# 3 -----------------------------------------------------------------------

def criterion_3(max_length: int = CORPUS_LENGTH) -> CriterionResult:
    worst, count, bad = 0.0, 0, []
    for rep in _reps():
        words = _essential(rep, max_length)
        for x, y in _distinct_pairs(words):
            for p in transverse_points(rep, x, y):
                r = p.cosh_residual()
                count += 1
                worst = max(worst, r)
                if r >= 1e-8:
                    bad.append((x.letters, y.letters, p.coset_rep.letters, r))
        for x in words:
            if primitive_root(x)[1] == 1:
                for p in self_intersection_points(rep, x):
                    count += 1
                    worst = max(worst, p.cosh_residual())
    return CriterionResult(3, "cosh identity at every crossing", not bad and count > 0,
                           f"{count} points, max relative residual {worst:.2e}", data={"bad": bad[:10]})


# 4, 5, 6 -----------------------------------------------------------------

def _random_rep(rng: random.Random):
    return pants_rep_from_traces(*[-2.2 - 4.0 * rng.random() for _ in range(3)])


def _primitive_essential(rep, max_length):
    return [w for w in _essential(rep, max_length) if primitive_root(w)[1] == 1]


def sample_points(n: int, seed: int, powers=(1,), max_length: int = 4):
    """``n`` random (rep, alpha, beta, point) with alpha = x^m, m drawn from ``powers``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        rep = _random_rep(rng)
        words = _primitive_essential(rep, max_length)
        x, y = rng.sample(words, 2)
        if same_root_up_to_inversion(x, y):
            continue
        alpha = power(x, rng.choice(powers))
        pts = transverse_points(rep, alpha, y)
        if pts:
            out.append((rep, alpha, y, rng.choice(pts)))
    return out


def criterion_4(n: int = 60) -> CriterionResult:
    worst_c, worst_s = 0.0, 0.0
    for rep, alpha, beta, p in sample_points(n, SEED + 4, powers=(1, 1, 2)):
        z = zigzag.build_zigzag(rep, alpha, beta, p)
        worst_c = max(worst_c, z.collinearity_residual())
        worst_s = max(worst_s, z.spacing_residual())
    ok = worst_c < 1e-8 and worst_s < 1e-8
    return CriterionResult(4, "zigzag midpoints on the product axis", ok,
                           f"{n} curves, collinearity {worst_c:.2e}, spacing {worst_s:.2e}")


def obtuse_points(max_length: int = 4, limit: int = 40):
    """Crossings whose reflected configuration has theta0 > pi/2, shorter class first."""
    out = []
    rng = random.Random(SEED + 55)
    reps = [pants_rep_from_traces(*METRICS[0])] + [_random_rep(rng) for _ in range(3)]
    for rep in reps:
        words = _primitive_essential(rep, max_length)
        for x, y in _distinct_pairs(words):
            for p in transverse_points(rep, x, y):
                if p.len_x <= p.len_y and zigzag.base_angle(p.len_x, p.len_y, p.product_length) > math.pi / 2 + 1e-6:
                    out.append((rep, x, y, p))
                    if len(out) >= limit:
                        return out
    return out


def _admissible(z):
    return z if z.len_alpha <= z.len_beta else z.swap()


def crossing_samples(n: int = 200, seed: int = SEED + 5):
    """Admissible (curve, u) samples: random ones plus every obtuse point found."""
    rng = random.Random(seed)
    out = []
    for rep, alpha, beta, p in sample_points(n // 2, seed, powers=(1, 2)):
        z = _admissible(zigzag.build_zigzag(rep, alpha, beta, p))
        half = z.len_product / 2
        out.append((z, rng.uniform(1e-6, half)))
        out.append((z, half if rng.random() < 0.3 else rng.uniform(1e-6, half)))
    for rep, alpha, beta, p in obtuse_points():
        z = _admissible(zigzag.build_zigzag(rep, alpha, beta, p))
        half = z.len_product / 2
        out.append((z, rng.uniform(1e-6, half)))
        out.append((z, half))
    return out


def criterion_5() -> CriterionResult:
    samples = crossing_samples()
    branches = Counter()
    fails = 0
    for z, u in samples:
        c = zigzag.make_config(z, u)
        branches["acute" if c.theta0 < math.pi / 2 else "obtuse"] += 1
        if not zigzag.verify_segment_crossing(c):
            fails += 1
    ok = fails == 0 and len(samples) >= 200 and branches["acute"] > 0 and branches["obtuse"] > 0
    return CriterionResult(5, "segments of mirrored zigzags cross", ok,
                           f"{len(samples)} samples, {fails} failures, branches {dict(branches)}")


def angle_samples(seed: int = SEED + 6):
    """Reflected and translated configurations; alpha ranges over x, x^2, x^3."""
    rng = random.Random(seed)
    configs = []
    for rep, alpha, beta, p in sample_points(90, seed, powers=(1, 2, 3)):
        z = zigzag.build_zigzag(rep, alpha, beta, p)
        for _ in range(3):
            configs.append(zigzag.make_config(z, rng.uniform(1e-6, z.len_product / 2)))
        configs.append(zigzag.make_config(z, z.len_product / 2))
        configs.append(zigzag.make_translate_config(z, rng.uniform(0.01, z.len_product - 0.01)))
    for rep, alpha, beta, p in obtuse_points(limit=10):
        z = zigzag.build_zigzag(rep, alpha, beta, p)
        configs.append(zigzag.make_config(z, rng.uniform(1e-6, z.len_product / 2)))
    configs += short_square_configs(20, rng)
    return configs


def short_square_configs(n: int, rng: random.Random):
    """Mirror cut through the alpha-segment, with alpha = x^2 shorter than beta.

    Random samples rarely land here because squares tend to be the longer class.
    """
    out = []
    while len(out) < n:
        rep = _random_rep(rng)
        x = rng.choice(_primitive_essential(rep, 3))
        y = rng.choice([w for w in _primitive_essential(rep, 6) if len(w.letters) >= 5])
        if same_root_up_to_inversion(x, y):
            continue
        pts = [p for p in transverse_points(rep, power(x, 2), y) if p.len_x < p.len_y]
        if not pts:
            continue
        z = zigzag.build_zigzag(rep, power(x, 2), y, rng.choice(pts))
        a = zigzag.make_config(z, z.len_product / 2).a
        out.append(zigzag.make_config(z, rng.uniform(1e-6, 2 * a)))
    return out


def criterion_6() -> CriterionResult:
    cases, bad, out_of_scope, degenerate = Counter(), [], 0, 0
    for c in angle_samples():
        case = zigzag.classify_config(c)
        if case in zigzag.SELF_CROSSING and primitive_root(c.curve.alpha)[1] == 1:
            # The argument needs alpha to wind at least twice.
            out_of_scope += 1
            continue
        r = zigzag.find_smaller_angle(c)
        if r is None:
            degenerate += 1
            continue
        cases[case.value] += 1
        if not (r.phi < c.curve.phi_P - 1e-9 and abs(r.phi - r.phi_bar) < 1e-8):
            bad.append((c.curve.alpha.letters, c.curve.beta.letters, c.u, case.value, r.phi, c.curve.phi_P))
    n = sum(cases.values())
    detail = (f"{n} configurations, {len(bad)} failures, cases {dict(sorted(cases.items()))}, "
              f"{out_of_scope} skipped with primitive alpha, {degenerate} degenerate")
    return CriterionResult(6, "smaller forward angle exists", not bad and n > 0, detail, data={"bad": bad[:10]})


# 7, 8 --------------------------------------------------------------------

SSC_PARAMS = [((1, 2), (1, 1)), ((1, 2), (2, -3)), ((2, 3), (1, 1)), ((2, 3), (2, -3))]


def corpus_sweep(max_length: int = CORPUS_LENGTH):
    """Run both theorem checks over all ordered pairs with distinct primitive roots."""
    wsc_bad, ssc_bad = [], []
    n_wsc = n_ssc = 0
    for rep in _reps():
        words = cyclic_words(max_length)
        for x, y in _distinct_pairs(words):
            for m in (2, 3):
                v = decide.wsc_verdict(rep, x, y, m)
                n_wsc += 1
                if not v.consistent:
                    wsc_bad.append((rep.params, x.letters, y.letters, m, v.to_json()))
            for (m1, m2), (c1, c2) in SSC_PARAMS:
                s = decide.ssc_conditions(rep, x, y, m1, m2, c1, c2)
                n_ssc += 1
                if None in s.values or not s.agree:
                    ssc_bad.append((rep.params, x.letters, y.letters, m1, m2, c1, c2, s.to_json()))
    return n_wsc, wsc_bad, n_ssc, ssc_bad


_SWEEP = {}


def _sweep():
    if "result" not in _SWEEP:
        t0 = time.perf_counter()
        _SWEEP["result"] = corpus_sweep()
        _SWEEP["seconds"] = time.perf_counter() - t0
    return _SWEEP["result"]


def criterion_7() -> CriterionResult:
    n, bad, _, _ = _sweep()
    dt = _SWEEP["seconds"]
    return CriterionResult(7, "bracket of a power vanishes iff disjoint or equal", not bad and dt < 600,
                           f"{n} verdicts on 2 metrics, {len(bad)} inconsistent, sweep {dt:.0f}s",
                           data={"bad": bad[:10]})


def criterion_8() -> CriterionResult:
    _, _, n, bad = _sweep()
    return CriterionResult(8, "four separability conditions agree", not bad,
                           f"{n} parameter sets on 2 metrics, {len(bad)} disagreements", data={"bad": bad[:10]})


# 9 -----------------------------------------------------------------------

def boundary_combos(rng: random.Random, max_length: int = 5):
    rep = pants_rep_from_traces(*METRICS[0])
    bnd = [w for w in cyclic_words(max_length) if is_nonessential(rep, w)]
    combos = [[(1, w)] for w in bnd]
    for _ in range(20):
        ws = rng.sample(bnd, rng.randint(2, 4))
        combos.append([(rng.choice([-3, -1, 2, 5]), w) for w in ws])
    return combos


def essential_combos(rng: random.Random, max_length: int = 5):
    """Combinations with at least one essential class the probe can bracket against.

    Classes whose root is the reversed figure-eight are left out: their
    brackets with powers of the probe are outside the computed shapes.
    """
    rep = pants_rep_from_traces(*METRICS[0])
    probe_inv = parse_cyclic(decide.PROBE).inverse()
    ess = [w for w in _essential(rep, max_length) if primitive_root(w)[0] != probe_inv]
    bnd = [w for w in cyclic_words(max_length) if is_nonessential(rep, w)]
    combos = [[(1, w)] for w in ess]
    for _ in range(40):
        ws = rng.sample(ess, rng.randint(1, 3)) + rng.sample(bnd, rng.randint(0, 2))
        combos.append([(rng.choice([-2, -1, 1, 3]), w) for w in ws])
    return combos


def criterion_9() -> CriterionResult:
    rep = pants_rep_from_traces(*METRICS[0])
    rng = random.Random(SEED + 9)
    bc = boundary_combos(rng)
    ec = essential_combos(rng)
    false_wit = sum(1 for c in bc if not decide.center_probe(rep, c).central_candidate)
    missing = []
    for c in ec:
        v = decide.center_probe(rep, c)
        if v.central_candidate or v.witness.m > v.bound:
            missing.append([(str(k), w.letters) for k, w in c])
    ok = false_wit == 0 and not missing
    return CriterionResult(9, "center probe with the figure-eight", ok,
                           f"{len(bc)} boundary combos ({false_wit} with witness), "
                           f"{len(ec)} essential combos ({len(missing)} without witness)",
                           data={"missing": missing[:10]})


# 10 ----------------------------------------------------------------------

def _signature(points):
    return sorted((p.sign, p.product.letters, p.angle) for p in points)


def criterion_10(max_length: int = 5) -> CriterionResult:
    reps = _reps()
    words = _essential(reps[0], max_length)
    pairs = list(_distinct_pairs(words))
    metric_bad = sum(1 for x, y in pairs if bracket_sum(reps[0], x, y) != bracket_sum(reps[1], x, y))
    radius_bad = 0
    for x, y in pairs:
        a, b = transverse_points(reps[1], x, y, radius=8), transverse_points(reps[1], x, y, radius=10)
        radius_bad += len(a) != len(b) or bracket_sum(reps[1], x, y, 8) != bracket_sum(reps[1], x, y, 10)
    conj = reps[0].conjugated(MobiusMap(2.0, 1.0, 1.0, 1.0))
    conj_bad, worst = 0, 0.0
    for x, y in pairs:
        s1 = _signature(transverse_points(reps[0], x, y))
        s2 = _signature(transverse_points(conj, x, y))
        if len(s1) != len(s2) or any(a[:2] != b[:2] for a, b in zip(s1, s2)):
            conj_bad += 1
            continue
        for a, b in zip(s1, s2):
            worst = max(worst, abs(a[2] - b[2]))
    conj_bad += worst >= 1e-8
    ok = metric_bad == 0 and radius_bad == 0 and conj_bad == 0
    return CriterionResult(10, "metric, radius and conjugation invariance", ok,
                           f"{len(pairs)} pairs: metric {metric_bad}, radius 8 vs 10 {radius_bad}, "
                           f"conjugation {conj_bad} mismatches (max angle shift {worst:.1e})")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run(numbers=None):
    out = []
    for i, f in enumerate(CRITERIA, 1):
        if numbers and i not in numbers:
            continue
        t0 = time.perf_counter()
        r = f()
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    numbers = {int(a) for a in argv} or None
    results = run(numbers)
    for r in results:
        print(r.line(), flush=True)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
