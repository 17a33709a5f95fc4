#!/usr/bin/env python3
"""Benchmark the compiled solver kernels against the NumPy fallback.

Two workloads:
  * solve_unit  - one m-by-m solve at a time (library hot path for greedy
    selection and deformation scans);
  * score_subsets - batched scoring of all size-k subsets of an n-point
    ground set (hot path of exhaustive selection and the decision suite).

Usage: python benchmarks/bench_kernels.py [--n 20] [--k 5] [--repeat 5]
"""

import argparse
import itertools
import math
import time

import numpy as np

from spdiv import _kernels_py

try:
    from spdiv import _kernels
except ImportError:
    _kernels = None


def kernel_matrix(rng, m):
    pts = rng.random((m, 3)) * 3.0
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
    np.fill_diagonal(d, 0.0)
    return np.exp(-d)


def bench_solve_unit(repeat):
    rng = np.random.default_rng(0)
    print("\nsolve_unit (single matrix, time per solve)")
    print(f"{'m':>4} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for m in (4, 8, 16, 32, 64):
        z = kernel_matrix(rng, m)
        rows = {}
        for name, mod in (("python", _kernels_py), ("compiled", _kernels)):
            if mod is None:
                rows[name] = None
                continue
            loops = max(10, 20000 // (m * m))
            best = math.inf
            for _ in range(repeat):
                start = time.perf_counter()
                for _ in range(loops):
                    mod.solve_unit(z)
                best = min(best, (time.perf_counter() - start) / loops)
            rows[name] = best
        speedup = "" if rows["compiled"] is None else f"{rows['python'] / rows['compiled']:8.1f}x"
        compiled = "n/a" if rows["compiled"] is None else f"{rows['compiled'] * 1e6:9.1f} us"
        print(f"{m:>4} {rows['python'] * 1e6:9.1f} us {compiled:>12} {speedup:>9}")


def bench_score_subsets(n, k, repeat):
    rng = np.random.default_rng(1)
    sim = kernel_matrix(rng, n)
    subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    count = len(subsets)
    print(f"\nscore_subsets (all C({n},{k}) = {count} subsets)")
    print(f"{'backend':>9} {'total':>10} {'per subset':>12} {'subsets/s':>12}")
    baseline = None
    for name, mod in (("python", _kernels_py), ("compiled", _kernels)):
        if mod is None:
            print(f"{name:>9} {'n/a':>10}")
            continue
        best = math.inf
        for _ in range(repeat):
            start = time.perf_counter()
            values, pivots, residuals = mod.score_subsets(sim, subsets)
            best = min(best, time.perf_counter() - start)
        if baseline is None:
            baseline = best
        rate = count / best
        extra = "" if best is baseline else f"  ({baseline / best:.1f}x vs python)"
        print(f"{name:>9} {best * 1e3:8.1f} ms {best / count * 1e6:9.2f} us {rate:12.0f}{extra}")
        checksum = float(np.nanmax(values))
        print(f"{'':>9} max value {checksum:.12f} (consistency check)")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20, help="ground set size for the batch workload")
    parser.add_argument("--k", type=int, default=5, help="subset size for the batch workload")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled kernels unavailable; timing the fallback only")
    bench_solve_unit(args.repeat)
    bench_score_subsets(args.n, args.k, args.repeat)


if __name__ == "__main__":
    main()
