"""Timings of the chamber-sorting kernel, compiled and vectorised, plus one Hodge table.

    python benchmarks/bench_kernels.py [--rows N] [--repeat R]
"""

import argparse
import os
import time

import numpy as np

from spinfano import koszul
from spinfano.weights import _kernels as K
from spinfano.weights import og_space


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    X = og_space(3, 13)
    rng = np.random.default_rng(0)
    W = (2 * rng.integers(-30, 31, size=(args.rows, X.n))).astype(np.int64)
    print(f"reflect_to_chamber on {args.rows} rows of {X.name} (Levi rank {len(X.levi_simple)})")
    t_np = best_of(lambda: K._reflect_numpy(W.copy(), X._S, X._norms), args.repeat)
    print(f"  numpy  {t_np * 1e3:9.1f} ms")
    if K._HAVE_NUMBA:
        K._reflect_numba(W[:10].copy(), X._S, X._norms)
        t_nb = best_of(lambda: K._reflect_numba(W.copy(), X._S, X._norms), args.repeat)
        print(f"  numba  {t_nb * 1e3:9.1f} ms  ({t_np / t_nb:.1f}x)")
    else:
        print("  numba  not installed")

    mode = "numpy" if not K.numba_enabled() else "numba"
    t = best_of(lambda: koszul.hodge_table(X, "S", pure=True), 1)
    print(f"hodge_table({X.name}, S) with {mode} kernels: {t:.2f} s")
    print(f"SPINFANO_NO_NUMBA={os.environ.get('SPINFANO_NO_NUMBA', '')!r}")


if __name__ == "__main__":
    main()
