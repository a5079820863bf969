#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Covers the three hot loops: convex-hull projection (Wolfe), map iteration
to convergence, and damped-Newton refinement.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --batch 50000 --output results.json
"""

import argparse
import json
import time

import numpy as np

from hopfix import PatternSet
from hopfix._kernels import (
    get_backend,
    iterate_batch,
    newton_batch,
    numba_available,
    project_points,
    set_backend,
)


def time_backend(fn, args, backend, repeats):
    set_backend(backend)
    fn(*args)  # warmup (JIT compile on the numba path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, fn, args, repeats, results):
    t_np = time_backend(fn, args, "numpy", repeats)
    if numba_available():
        t_nb = time_backend(fn, args, "numba", repeats)
        speedup = t_np / t_nb
    else:
        t_nb, speedup = float("inf"), 0.0
    print(f"{name:>22}: numba {t_nb*1e3:9.2f} ms | numpy {t_np*1e3:9.2f} ms | {speedup:6.1f}x")
    results[name] = {"numba_s": t_nb, "numpy_s": t_np, "speedup": speedup}


def main():
    ap = argparse.ArgumentParser(description="hopfix kernel benchmarks")
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--output", type=str, default=None)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    saved = get_backend()
    results = {}

    print(f"numba available: {numba_available()}; batch = {args.batch}")

    # hull projection: 6 vertices in R^8
    V = rng.standard_normal((6, 8))
    X = rng.standard_normal((args.batch, 8))
    bench("hull projection", project_points, (V, X), args.repeats, results)

    # map iteration on the 2-D demo set
    W = PatternSet.demo_square().matrix
    X2 = rng.uniform(-1.2, 1.2, (args.batch, 2))
    bench(
        "map iteration",
        lambda w, b, x: iterate_batch(w, b, x, 500, 1e-12),
        (W, 15.0, X2),
        args.repeats,
        results,
    )

    # Newton refinement on a 5-pattern 4-D set
    g = rng.standard_normal((4, 5))
    W2 = g / np.linalg.norm(g, axis=0)
    X4 = rng.standard_normal((args.batch // 4, 4)) * 0.6
    bench(
        "newton refinement",
        lambda w, b, x: newton_batch(w, b, x, 50, 1e-12, 200),
        (W2, 9.0, X4),
        args.repeats,
        results,
    )

    set_backend(saved)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"results written to {args.output}")


if __name__ == "__main__":
    main()
