#!/usr/bin/env python3
"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both paths are checked for identical results before they are timed.
"""

import argparse
import time

import numpy as np

from cyclix import kernels
from cyclix._jit import NUMBA_AVAILABLE


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def rref_cases(rng):
    for n in (40, 120, 300):
        mat = rng.integers(0, 5, size=(n, n + n // 2)).astype(np.int64)
        # make the rank deficient so elimination does real work
        mat[n // 2 :] = (mat[: n - n // 2] * 3 + mat[: n - n // 2][::-1]) % 32003
        yield f"rref mod 32003, {n}x{mat.shape[1]}", lambda use, m=mat: kernels.rref_mod_p(m, 32003, use_numba=use)


def rotation_cases(rng):
    for count, length in ((2_000, 6), (20_000, 8), (100_000, 10)):
        words = rng.integers(0, 4, size=(count, length)).astype(np.int32)
        parity = np.array([0, 1, 1, 0], dtype=np.int8)
        yield f"necklaces, {count} words of length {length}", (
            lambda use, w=words, p=parity: kernels.min_rotations(w, p, use_numba=use)
        )


def same(a, b):
    return all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    if not NUMBA_AVAILABLE:
        print("numba disabled or missing; only the numpy path is timed")
    print(f"{'case':45s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for label, run in list(rref_cases(rng)) + list(rotation_cases(rng)):
        ref = run(False)
        t_np = best_of(lambda: run(False), args.repeat)
        if NUMBA_AVAILABLE:
            got = run(True)  # also compiles
            if not same(ref, got):
                raise SystemExit(f"{label}: numba and numpy disagree")
            t_nb = best_of(lambda: run(True), args.repeat)
            print(f"{label:45s} {t_np * 1e3:10.2f} {t_nb * 1e3:10.2f} {t_np / t_nb:7.1f}x")
        else:
            print(f"{label:45s} {t_np * 1e3:10.2f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
