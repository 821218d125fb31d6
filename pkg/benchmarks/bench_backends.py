#!/usr/bin/env python3
"""Timing comparison of the sign-enumeration lanes.

Runs the same weak-constant maximization over random tensors through
the pure-Python exact engine, the plain-numpy kernel, and the jitted
kernel (when numba is importable), checks that the three agree, and
prints one row per shape.

Usage: python3 benchmarks/bench_backends.py [--repeats N] [--seed S]
"""

import argparse
import importlib.util
import random
import sys
import time

import numpy as np

from polymoment import _signopt
from polymoment import _kernels_numpy

HAS_NUMBA = importlib.util.find_spec("numba") is not None

SHAPES = [
    (14,),
    (12, 8),
    (16, 12),
    (8, 6, 4),
    (10, 8, 5),
]


def best_of(fn, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="compare the sign-enumeration backends"
    )
    parser.add_argument("--repeats", type=int, default=3,
                        help="timed repetitions per lane (best is kept)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the random tensors")
    args = parser.parse_args(argv)
    if args.repeats < 1:
        parser.error("--repeats must be >= 1")

    lanes = [("python", lambda arr, flat, dims: _signopt.maximize_signs(flat, dims)),
             ("numpy", lambda arr, flat, dims: _kernels_numpy.weak_enum(arr))]
    if HAS_NUMBA:
        from polymoment import _kernels_numba
        lanes.append(("numba",
                      lambda arr, flat, dims: _kernels_numba.weak_enum(arr)))
    else:
        print("numba not importable; timing the python and numpy lanes only")

    rng = random.Random(args.seed)
    header = "%-12s" % "shape" + "".join("%12s" % ("%s (ms)" % name)
                                         for name, _ in lanes)
    print(header)
    print("-" * len(header))

    failures = 0
    for dims in SHAPES:
        size = 1
        for d in dims:
            size *= d
        flat = [rng.uniform(-1.0, 1.0) for _ in range(size)]
        arr = np.array(flat).reshape(dims)

        values = []
        times = []
        for _, fn in lanes:
            fn(arr, flat, dims)  # warm-up (and JIT compile)
            times.append(best_of(lambda f=fn: f(arr, flat, dims),
                                 args.repeats))
            values.append(fn(arr, flat, dims)[0])

        ref = values[0]
        scale = max(1.0, abs(ref))
        if any(abs(v - ref) > 1e-9 * scale for v in values[1:]):
            failures += 1
            print("%-12s BACKEND MISMATCH: %s" % (str(dims), values))
            continue
        print("%-12s" % str(dims)
              + "".join("%12.3f" % (t * 1e3) for t in times))

    if failures:
        print("%d shape(s) disagreed between lanes" % failures)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
