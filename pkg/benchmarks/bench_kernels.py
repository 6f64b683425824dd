#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the NumPy fallback.

Run from the repository root after an editable install:

    python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from qmclab import _kernels_py, load_direction_table
from qmclab.sobol import SobolEngine

try:
    from qmclab import _kernels_c
    BACKENDS = {"cython": _kernels_c, "python": _kernels_py}
except ImportError:
    print("compiled kernels unavailable; timing the fallback only")
    BACKENDS = {"python": _kernels_py}


def best_of(repeats, fn):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_sobol_fill():
    table = load_direction_table()
    print("\nsobol_fill: N points x n dims, seconds (best of 3)")
    print(f"{'case':>16}" + "".join(f"{name:>12}" for name in BACKENDS))
    for n, count in [(5, 2 ** 16), (50, 2 ** 16), (360, 2 ** 14)]:
        row = f"{count:>7} x {n:<6}"
        v = np.ascontiguousarray(table.directions(n))
        for impl in BACKENDS.values():
            out = np.empty((count, n))
            state = np.zeros(n, np.uint32)

            def run(impl=impl, state=state, out=out):
                state[:] = 0
                impl.sobol_fill(v, state, 0, out)

            row += f"{best_of(3, run):>12.4f}"
        print(row)


def bench_l2():
    table = load_direction_table()
    print("\nl2_star_sq: N points x n dims, seconds (best of 3)")
    print(f"{'case':>16}" + "".join(f"{name:>12}" for name in BACKENDS))
    for n, count in [(5, 2 ** 12), (5, 2 ** 14), (10, 2 ** 13)]:
        eng = SobolEngine(table, n)
        pts = eng.take(count)
        row = f"{count:>7} x {n:<6}"
        for impl in BACKENDS.values():
            row += f"{best_of(3, lambda impl=impl: impl.l2_star_sq(pts)):>12.4f}"
        print(row)


if __name__ == "__main__":
    print(f"backends: {', '.join(BACKENDS)}")
    bench_sobol_fill()
    bench_l2()
