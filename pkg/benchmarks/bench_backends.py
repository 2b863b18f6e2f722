#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each kernel on a representative workload with both backends and
prints a timing table.  Usage:

    python benchmarks/bench_backends.py [--repeat 3] [--heavy]

--heavy enlarges the workloads (slower, steadier numbers).
"""

import argparse
import time

from mexmoments import _pure

try:
    from mexmoments import _speed
except ImportError:
    _speed = None


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads(heavy):
    hist_n = 45 if heavy else 36
    series_n = 3000 if heavy else 1200
    euler_n = 4096 if heavy else 2000

    euler = _pure.euler_product_coeffs(series_n)
    pn = _pure.invert_unit_series(euler)
    dense = pn[: series_n + 1]
    sparse = [(k * (k - 1) // 2, (2 * k + 1) ** 2 * (-1) ** k) for k in range(1, 60)]

    return [
        (
            f"mex_value_counts(n={hist_n}, s=2, M=4)",
            lambda impl: impl.mex_value_counts(hist_n, 2, 4),
        ),
        (
            f"cauchy_product(N={series_n}) big ints",
            lambda impl: impl.cauchy_product(dense, dense),
        ),
        (
            f"invert_unit_series(euler, N={series_n})",
            lambda impl: impl.invert_unit_series(euler),
        ),
        (
            f"euler_product_coeffs(N={euler_n})",
            lambda impl: impl.euler_product_coeffs(euler_n),
        ),
        (
            f"sparse_dense_product(60 terms, N={series_n})",
            lambda impl: impl.sparse_dense_product(sparse, dense, series_n + 1),
        ),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--heavy", action="store_true")
    args = parser.parse_args()

    if _speed is None:
        print("compiled extension not available; timing the pure backend only")

    print(f"{'kernel':<46} {'pure':>10} {'fast':>10} {'speedup':>8}")
    for name, call in workloads(args.heavy):
        t_pure, ref = best_of(lambda: call(_pure), args.repeat)
        if _speed is not None:
            t_fast, got = best_of(lambda: call(_speed), args.repeat)
            if got != ref:
                raise SystemExit(f"backend results disagree for {name}")
            print(f"{name:<46} {t_pure:>9.4f}s {t_fast:>9.4f}s {t_pure / t_fast:>7.1f}x")
        else:
            print(f"{name:<46} {t_pure:>9.4f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
