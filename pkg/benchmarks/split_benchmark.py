"""Timing comparison of the two split kernels.

Runs the same batch of node-split searches through the compiled and the
numpy backend, checks that every result matches exactly, and prints the
per-node timings.  Representative shapes: bootstrap-sized index sets over
a few hundred accounts with sqrt-of-619 candidate features per node.

Usage: python3 benchmarks/split_benchmark.py [--rows 500] [--cols 619]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from botdetect.forest.backend import compiled_available, get_backend


def make_cases(rows: int, cols: int, nodes: int, seed: int):
    rng = np.random.Generator(np.random.PCG64(seed))
    X = rng.normal(size=(rows, cols))
    # Duplicate-heavy columns exercise the tie handling that dominates
    # real feature matrices (counts, zero-inflated statistics).
    X[:, ::3] = np.floor(X[:, ::3] * 2.0)
    X = np.ascontiguousarray(X)
    y = (rng.random(rows) < 0.5).astype(np.int8)
    k = math.isqrt(cols)
    cases = []
    for _ in range(nodes):
        size = int(rng.integers(8, rows + 1))
        idx = np.sort(rng.integers(0, rows, size=size)).astype(np.int64)
        feats = np.sort(rng.permutation(cols)[:k]).astype(np.int64)
        cases.append((idx, feats))
    return X, y, cases


def run(backend, X, y, cases):
    best_split = backend.best_split
    start = time.perf_counter()
    results = [best_split(X, y, idx, feats) for idx, feats in cases]
    elapsed = time.perf_counter() - start
    return results, elapsed


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=500)
    parser.add_argument("--cols", type=int, default=619)
    parser.add_argument("--nodes", type=int, default=400)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    X, y, cases = make_cases(args.rows, args.cols, args.nodes, args.seed)
    python_results, python_time = run(get_backend("python"), X, y, cases)
    print("python   %8.1f nodes/s (%.3fs for %d nodes)"
          % (len(cases) / python_time, python_time, len(cases)))

    if not compiled_available():
        print("compiled backend unavailable; build the extension to compare")
        return 0

    compiled_results, compiled_time = run(get_backend("compiled"), X, y, cases)
    print("compiled %8.1f nodes/s (%.3fs for %d nodes)"
          % (len(cases) / compiled_time, compiled_time, len(cases)))

    mismatches = sum(
        1
        for (pf, pt), (cf, ct) in zip(python_results, compiled_results)
        if pf != cf or pt != ct
    )
    print("speedup %.2fx, %d result mismatches"
          % (python_time / compiled_time, mismatches))
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
