#!/usr/bin/env python3
"""Time the oracle's pairwise Gauss-period trace kernel: numba vs numpy.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so the env flag does not matter here.
Each row also checks that the two backends return identical matrices.
"""

import argparse
import time

import numpy as np

from cyclotrace import kernels
from cyclotrace.oracle import ramanujan_table, realize
from cyclotrace.trace_form import FieldSpec

CASES = [
    FieldSpec.of(3, [(7, 3), (13, 3)]),
    FieldSpec.of(5, [(11, 5), (31, 5)]),
    FieldSpec.of(6, [(7, 3), (5, 2), (13, 6)]),
    FieldSpec.of(4, [(5, 4), (13, 4), (17, 2)]),
    FieldSpec.of(2, [(3, 2), (5, 2), (7, 2), (11, 2)]),
    FieldSpec.of(12, [(13, 12), (7, 6), (37, 4)]),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not importable; nothing to compare")

    # compile once outside the timed region
    warm = realize(CASES[0])
    kernels.fiber_pair_traces(warm.units, warm.labels, 3, ramanujan_table(warm.conductor), warm.conductor, backend="numba")

    print(f"{'spec':<40} {'f':>7} {'phi(f)':>7} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for spec in CASES:
        r = realize(spec)
        f, n = r.conductor, spec.degree
        ram = ramanujan_table(f)
        t_np, a = best_of(lambda: kernels.fiber_pair_traces(r.units, r.labels, n, ram, f, backend="numpy"), args.repeat)
        t_nb, b = best_of(lambda: kernels.fiber_pair_traces(r.units, r.labels, n, ram, f, backend="numba"), args.repeat)
        assert np.array_equal(a, b), spec
        print(f"{str(spec):<40} {f:>7} {len(r.units):>7} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
