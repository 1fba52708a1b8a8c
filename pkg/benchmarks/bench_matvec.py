#!/usr/bin/env python3
"""Benchmark the numba and numpy matvec backends.

The matvec of D_s (4th-order periodic stencil plus a conjugating pointwise
term) dominates simulator runtime, so both backends are timed on the forward
and transpose kernels across grid sizes.  The numba path is also what the
CLDIRAC_NO_NUMBA=1 environment flag disables at import time.

Usage: python benchmarks/bench_matvec.py [--n-list 64,128,256] [--reps 200]
"""

import argparse
import time

import numpy as np

from cldirac.torus import kernels


def time_backend(fn_fwd, fn_bwd, u, w, s, h, reps):
    # warm up (includes JIT compilation for the numba path)
    v = fn_fwd(u, w, s, h)
    fn_bwd(v, w, s, h)
    t0 = time.perf_counter()
    for _ in range(reps):
        v = fn_fwd(u, w, s, h)
        u2 = fn_bwd(v, w, s, h)
    dt = time.perf_counter() - t0
    return dt / reps, u2


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-list", default="64,128,256")
    parser.add_argument("--reps", type=int, default=200)
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.n_list.split(",")]

    if kernels.ds_apply_numba is None:
        print("numba backend unavailable; timing numpy only")

    print(f"{'N':>6} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    rng = np.random.default_rng(0)
    for n in sizes:
        h = 2.0 * np.pi / n
        u = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        x = np.arange(n) * h
        w = np.sin(x)[:, None] + 1j * np.sin(x)[None, :] + 0j
        s = 16.0

        t_np, out_np = time_backend(kernels.ds_apply_numpy,
                                    kernels.dst_apply_numpy, u, w, s, h, args.reps)
        if kernels.ds_apply_numba is not None:
            t_nb, out_nb = time_backend(kernels.ds_apply_numba,
                                        kernels.dst_apply_numba, u, w, s, h, args.reps)
            err = np.max(np.abs(out_np - out_nb))
            assert err < 1e-12 * max(1.0, np.max(np.abs(out_np))), \
                f"backend mismatch: {err}"
            print(f"{n:>6} {1e3 * t_np:>12.3f} {1e3 * t_nb:>12.3f} "
                  f"{t_np / t_nb:>8.2f}x")
        else:
            print(f"{n:>6} {1e3 * t_np:>12.3f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
