#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Usage: python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from weylest._backend import kernels_py

try:
    from weylest._backend import _kernels as compiled
except ImportError:
    compiled = None

rng = np.random.default_rng(7)

N = 1_000_000
XS = rng.normal(size=N)
US = rng.uniform(1e-9, 1 - 1e-9, size=N)
KDE_XS = rng.normal(size=100_000)
KDE_GRID = np.linspace(-4, 4, 101)
SIGMA_XS = 3.0 + 5.0 * rng.normal(size=100_000)
SIGMA_IDX = np.linspace(50_000, 100_000, 2048).round().astype(np.int64)

CASES = [
    ("gauss_cdf (1e6)", lambda m: m.gauss_cdf(XS)),
    ("gauss_quantile (1e6)", lambda m: m.gauss_quantile(US)),
    ("running_le_count (1e6)", lambda m: m.running_le_count(XS, 0.0)),
    ("running_sum (1e6)", lambda m: m.running_sum(XS)),
    ("kde_eval (1e5 x 101)", lambda m: m.kde_eval(KDE_XS, KDE_GRID, 0.1)),
    ("sigma_kernel_trace (1e5, 2048 pts)",
     lambda m: m.sigma_kernel_trace(SIGMA_XS, 3.0, SIGMA_IDX, 0.2, 1.0)),
]


def best_time(fn, mod, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    mods = [("python", kernels_py)]
    if compiled is not None:
        mods.append(("cython", compiled))
    else:
        print("compiled backend not built; timing the fallback only")

    width = max(len(name) for name, _ in CASES)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{n:>10}" for n, _ in mods)
    if compiled is not None:
        header += "  " + f"{'speedup':>8}"
    print(header)
    for name, fn in CASES:
        times = [best_time(fn, mod, args.repeat) for _, mod in mods]
        row = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:>8.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>7.2f}x"
        print(row)


if __name__ == "__main__":
    main()
