"""Compiled vs pure-Python level scan on Haar-random targets.

Usage: python benchmarks/bench_kernels.py [--eps 1e-4] [--count 5]
"""
import argparse
import math
import time

import numpy as np

from vfive import kernels
from vfive.approx_direct import starting_level
from vfive.core import UnitVector4


def time_backend(backend, targets, levels, eps):
    tau = math.sqrt(2.0) * eps
    results = []
    start = time.perf_counter()
    for g in targets:
        for level in levels:
            results.append(kernels.search_level(level, g.as_tuple(), tau, eps, backend=backend)[0])
    return time.perf_counter() - start, results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=1e-4)
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    targets = [UnitVector4.normalized(rng.standard_normal(4)) for _ in range(args.count)]
    top = starting_level(args.eps)
    levels = list(range(top - 3, top + 2))
    print(f"eps={args.eps:g} levels={levels[0]}..{levels[-1]} targets={args.count}")
    timings = {}
    hits = {}
    for backend in kernels.available_backends():
        timings[backend], hits[backend] = time_backend(backend, targets, levels, args.eps)
        print(f"{backend:>9}: {timings[backend]:8.3f} s")
    if len(timings) == 2:
        print(f"  speedup: {timings['python'] / timings['compiled']:.1f}x")
        print(f"  identical hits: {hits['python'] == hits['compiled']}")


if __name__ == "__main__":
    main()
