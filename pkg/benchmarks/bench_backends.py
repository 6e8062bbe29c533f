#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the stratified rank-histogram kernel and the brute-force pair counter
on a few representative workloads with both backends, checks the results
agree, and prints a timing table with speedups.

    python benchmarks/bench_backends.py [--repeat N] [--json]
"""

import argparse
import json
import sys
import time

import numpy as np

from trlrank import matmul_tensor, w_tensor
from trlrank._kernels import get_backend


def workloads():
    w = w_tensor()
    mm = matmul_tensor(2, 2, 2)
    mm333 = matmul_tensor(3, 3, 3)
    return [
        # (label, kernel, slabs, p, enumeration range)
        ("rank-hist W p=499 (499^2 x 2x2)", "rank_histogram", w.mod_p(499), 499, 499**2),
        ("rank-hist <2,2,2> p=17 (17^4 x 4x4)", "rank_histogram", mm.mod_p(17), 17, 17**4),
        ("rank-hist <3,3,3> p=3 (3^9 x 9x9)", "rank_histogram", mm333.mod_p(3), 3, 3**9),
        ("brute-force W p=13 (13^4 pairs)", "bruteforce_count", w.mod_p(13), 13, 13**2),
        ("value-hist W p=7 (7^6 points)", "value_histogram", w.mod_p(7), 7, 7**2),
    ]


def run(repeat: int):
    rows = []
    numba_backend = get_backend("numba")
    numpy_backend = get_backend("numpy")
    for label, fn_name, slabs, p, total in workloads():
        results = {}
        times = {}
        for backend in (numba_backend, numpy_backend):
            fn = getattr(backend, fn_name)
            fn(slabs, p, 0, min(total, 16))          # warm-up / jit compile
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                out = fn(slabs, p, 0, total)
                best = min(best, time.perf_counter() - t0)
            results[backend.NAME] = out
            times[backend.NAME] = best
        a, b = results["numba"], results["numpy"]
        agree = (a == b) if isinstance(a, int) else bool(np.array_equal(a, b))
        if not agree:
            raise SystemExit(f"backend mismatch on {label}: {a} vs {b}")
        rows.append(
            {
                "workload": label,
                "numba_s": times["numba"],
                "numpy_s": times["numpy"],
                "speedup": times["numpy"] / times["numba"],
            }
        )
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions (best-of)")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return 0
    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for r in rows:
        print(
            f"{r['workload']:<{width}}  {r['numba_s']:>9.4f}s  {r['numpy_s']:>9.4f}s"
            f"  {r['speedup']:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
