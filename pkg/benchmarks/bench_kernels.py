"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths of the tridiagonal eigensolver: batched Sturm
counts (the bisection inner loop) and the factor/solve pair used by
inverse iteration.  Run as a script:

    python benchmarks/bench_kernels.py [N]
"""

import sys
import time

import numpy as np

from collapse_spectra import _kernels_py

try:
    from collapse_spectra import _kernels_cy
except ImportError:
    _kernels_cy = None


def _sample_system(n, seed=42):
    rng = np.random.default_rng(seed)
    d = rng.uniform(1.0, 3.0, n)
    e = rng.uniform(0.1, 1.0, n - 1)
    return d, e


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(n):
    d, e = _sample_system(n)
    e2 = e * e
    shifts = np.linspace(0.0, 4.0, 32)
    pivmin = 1e-300
    rhs = np.linspace(1.0, 2.0, n)

    rows = []
    for name, mod in (("python", _kernels_py), ("cython", _kernels_cy)):
        if mod is None:
            rows.append((name, None, None))
            continue
        t_sturm = _time(lambda: mod.sturm_counts(d, e2, shifts, pivmin))
        def factor_solve():
            fac = mod.gtt_factor(d, e, 0.5)
            mod.gtt_solve(*fac, rhs)
        t_solve = _time(factor_solve)
        rows.append((name, t_sturm, t_solve))
    return rows


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000
    rows = bench(n)
    print(f"kernel benchmark, N = {n}")
    print(f"{'impl':<10} {'sturm_counts x32':>18} {'factor+solve':>14}")
    base = {}
    for name, t_sturm, t_solve in rows:
        if t_sturm is None:
            print(f"{name:<10} {'unavailable':>18}")
            continue
        base.setdefault("sturm", t_sturm)
        base.setdefault("solve", t_solve)
        s1 = f"{t_sturm * 1e3:9.2f} ms ({base['sturm'] / t_sturm:4.1f}x)"
        s2 = f"{t_solve * 1e3:7.2f} ms ({base['solve'] / t_solve:4.1f}x)"
        print(f"{name:<10} {s1:>18} {s2:>14}")


if __name__ == "__main__":
    main()
