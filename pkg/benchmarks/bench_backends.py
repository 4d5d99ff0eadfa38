#!/usr/bin/env python3
"""Benchmark the numba kernel lane against the pure NumPy fallback.

Times the hot kernels (Gaussian generation, path construction, hull
batches, argmax batches) on both lanes and prints per-replicate costs
with the speedup.  The lanes produce identical numbers, so only time is
compared.

Usage:
    python benchmarks/bench_backends.py [--steps 4096] [--reps 100]
"""

import argparse
import time

import numpy as np

from brownhull import _kernels_numba as nb_lane
from brownhull import _kernels_numpy as np_lane
from brownhull import rng


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=4096)
    parser.add_argument("--reps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    key = rng.stream_key(args.seed, 0)
    steps, reps, seed = args.steps, args.reps, args.seed

    cases = [
        ("gaussian_block(2*steps)",
         lambda k: k.gaussian_block(key, 2 * steps), 1),
        ("bm_path", lambda k: k.bm_path(key, steps), 1),
        ("bb_path", lambda k: k.bb_path(key, steps), 1),
        ("hull_metrics_batch(m=1,n=1)",
         lambda k: k.hull_metrics_batch(seed, 0, reps, 1, 1, steps), reps),
        ("argmax_batch(m=1,n=1)",
         lambda k: k.argmax_batch(seed, 0, reps, 1, 1, steps), reps),
    ]

    print(f"steps={steps} reps={reps}  (times per call; batch rows per replicate)")
    print(f"{'kernel':34s} {'numba':>12s} {'numpy':>12s} {'speedup':>8s}")
    for name, fn, per in cases:
        fn(nb_lane)  # JIT warmup
        t_nb = best_of(lambda: fn(nb_lane)) / per
        t_np = best_of(lambda: fn(np_lane)) / per
        print(f"{name:34s} {t_nb * 1e3:10.3f}ms {t_np * 1e3:10.3f}ms "
              f"{t_np / t_nb:7.1f}x")

    # cross-check: identical output on a sample batch
    a = nb_lane.hull_metrics_batch(seed, 0, min(reps, 20), 1, 1, steps)
    b = np_lane.hull_metrics_batch(seed, 0, min(reps, 20), 1, 1, steps)
    same = np.array_equal(a, b)
    print(f"\nlanes bitwise identical on sample batch: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
