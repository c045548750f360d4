"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Prints a table of best-of-N wall times and the speedup.  Both backends must
agree on every output; the script exits nonzero if they do not.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from splitcode import kernels
from splitcode.combinators import example_151_design, family_3_3x2


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads():
    d151 = example_151_design()
    d50 = family_3_3x2(50)
    arr151 = np.asarray(d151.blocks, dtype=np.int64)
    arr50 = np.asarray(d50.blocks, dtype=np.int64)
    yield ("coverage 2-(151,3x5) 151 blocks",
           lambda kmod: kmod.coverage_counts(arr151, 151, 2)[0])
    yield ("coverage 3-(50,3x2) 2450 blocks",
           lambda kmod: kmod.coverage_counts(arr50, 50, 3)[0])
    yield ("difference hill-climb Z_73 3x2, 2e5 moves",
           lambda kmod: kmod.diff_hill_climb(73, 3, 2, 3, 1, 200_000))


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return a is not None and b is not None and np.array_equal(a, b)
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not available; build with `pip install -e .`", file=sys.stderr)
        return 1
    print(f"{'workload':45s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    agree = True
    for name, fn in workloads():
        tp, op = _best(lambda: fn(kernels.python), args.repeat)
        tc, oc = _best(lambda: fn(kernels.compiled), args.repeat)
        agree &= _same(op, oc)
        print(f"{name:45s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")
    print("outputs agree" if agree else "OUTPUTS DIFFER")
    return 0 if agree else 2


if __name__ == "__main__":
    sys.exit(main())
