"""Benchmark the JIT-compiled kernels against the pure-Python/numpy fallback.

Run with ``python -m phproc.benchmark [--length N] [--repeats R]``.  The
recursive path kernel is the hot loop (sequential dependence, one libm pow per
step); the moving-maximum construction is vectorised numpy in both modes and
is timed for context.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import kernels
from .rng import uniforms


def _time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", type=int, default=1_000_000)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args(argv)

    u = uniforms(seed=20240306, n=args.length)
    alpha, delta = 4.0, 2.0

    print(f"kernel benchmark, length={args.length:,}, repeats={args.repeats}")
    print(f"numba available: {kernels.am_path_numba is not None}; "
          f"package uses: {'numba' if kernels.USING_NUMBA else 'python'}")

    t_py = _time(kernels.am_path_python, u, alpha, delta, repeats=args.repeats)
    print(f"recursive path, python loop : {t_py * 1e3:10.2f} ms")

    if kernels.am_path_numba is not None:
        kernels.am_path_numba(u[:100], alpha, delta)  # compile outside the timer
        t_nb = _time(kernels.am_path_numba, u, alpha, delta, repeats=args.repeats)
        print(f"recursive path, numba njit  : {t_nb * 1e3:10.2f} ms   "
              f"(speedup {t_py / t_nb:.1f}x)")
        same = np.array_equal(kernels.am_path_numba(u, alpha, delta),
                              kernels.am_path_python(u, alpha, delta))
        print(f"backends bitwise identical : {same}")

    t_k = _time(kernels.kundu_path, u, 0.5, 0.1, repeats=args.repeats)
    print(f"moving-maximum path (numpy) : {t_k * 1e3:10.2f} ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
