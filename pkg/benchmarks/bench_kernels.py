#!/usr/bin/env python3
"""Benchmark the compiled arithmetic kernels against the pure-Python twin.

Run after installing the package:

    python3 benchmarks/bench_kernels.py

Times rref and matmul on seeded random rational and F_5 matrices at a few
desk-scale-and-above sizes, and prints the speedup of the compiled backend.
"""

import random
import time
from fractions import Fraction

from taurec import _kernels_py

try:
    from taurec import _kernels
except ImportError:
    _kernels = None


def random_pair_matrix(rng, rows, cols, p):
    num, den = [], []
    for _ in range(rows * cols):
        if p:
            num.append(rng.randrange(p))
            den.append(1)
        else:
            f = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
            num.append(f.numerator)
            den.append(f.denominator)
    return num, den


def bench(fn, args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if _kernels is None:
        print("compiled kernel not built; nothing to compare")
        return
    rng = random.Random(20240817)
    rows = []
    for p in (0, 5):
        field = "Q" if p == 0 else f"F_{p}"
        for n in (10, 20, 40):
            num, den = random_pair_matrix(rng, n, n, p)
            t_py = bench(_kernels_py.rref, (n, n, num, den, p))
            t_cy = bench(_kernels.rref, (n, n, num, den, p))
            rows.append((f"rref {n}x{n} {field}", t_py, t_cy))

            anum, aden = random_pair_matrix(rng, n, n, p)
            bnum, bden = random_pair_matrix(rng, n, n, p)
            t_py = bench(_kernels_py.matmul, (n, n, n, anum, aden, bnum, bden, p))
            t_cy = bench(_kernels.matmul, (n, n, n, anum, aden, bnum, bden, p))
            rows.append((f"matmul {n}x{n} {field}", t_py, t_cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, t_py, t_cy in rows:
        print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {t_cy * 1e3:>8.2f}ms  {t_py / t_cy:>7.2f}x")


if __name__ == "__main__":
    main()
