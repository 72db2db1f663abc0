"""Time the ball scan with and without numba.

    python3 benchmarks/bench_kernels.py [--radii 6 8 10] [--repeat 3]
"""
import argparse
import time

import numpy as np

from goldman import _kernels
from goldman.fuchsian import default_rep, holonomy
from goldman.hplane import _homog, axis, frame


def setup(x="aB", y="aab"):
    rep = default_rep()
    K = frame(axis(holonomy(rep, x))).matrix
    L = axis(holonomy(rep, y))
    ey = np.column_stack([_homog(L.source), _homog(L.target)])
    return K, rep.gens, ey


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radii", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    K, gens, ey = setup()
    if _kernels.USE_NUMBA:
        _kernels.warmup()
    print(f"{'radius':>6} {'hits':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for r in args.radii:
        hits = _kernels.scan_ball(K, gens, ey, r, use_numba=False)
        t_np = best_of(lambda: _kernels.scan_ball(K, gens, ey, r, use_numba=False), args.repeat)
        if _kernels.USE_NUMBA:
            t_nb = best_of(lambda: _kernels.scan_ball(K, gens, ey, r, use_numba=True), args.repeat)
            print(f"{r:>6} {len(hits):>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}")
        else:
            print(f"{r:>6} {len(hits):>6} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
