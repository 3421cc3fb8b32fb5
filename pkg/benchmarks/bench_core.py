#!/usr/bin/env python3
"""Benchmark the compiled core against the NumPy fallback.

Times the three hot kernels on representative problem sizes:

  * fv_rhs_core on the phase-diagram grid (31x31x21) and a refinement grid
    (64x64x32), both with and without the look-ahead shift;
  * pair_torques at the trajectory-figure size (N=8) and a larger N;
  * the Bessel K1 evaluation feeding the pair sums.

Run: python benchmarks/bench_core.py [--repeats N]
"""

import argparse
import time

import numpy as np

from antkinetics import _core_py as pure
from antkinetics.field import shift_tables

try:
    from antkinetics import _core as comp
except ImportError:
    comp = None


def timeit(fn, repeats):
    fn()  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


def bench_rhs(mod, nx, ny, nt, lam, repeats):
    rng = np.random.default_rng(0)
    f = rng.random((nx, ny, nt)) + 0.05
    logf = np.log(f)
    c = rng.random((nx, ny))
    dcdx = np.roll(c, -1, 0) - np.roll(c, 1, 0)
    dcdy = np.roll(c, -1, 1) - np.roll(c, 1, 1)
    th = 2 * np.pi * np.arange(nt) / nt
    dth = 2 * np.pi / nt
    if lam > 0:
        bi, bj, wi, wj = shift_tables(nt, lam, 1 / nx, 1 / ny)
        cshift = pure.shifted_values(c, bi, bj, wi, wj)
    else:
        cshift = np.zeros((1, 1, 1))
    rhs = np.empty_like(f)
    args = (f, logf, dcdx, dcdy, cshift, np.cos(th), np.sin(th),
            np.cos(th + dth / 2), np.sin(th + dth / 2),
            0.01, 3.5, 325.0, lam, 1 / nx, 1 / ny, dth, rhs)
    return timeit(lambda: mod.fv_rhs_core(*args), repeats)


def bench_torques(mod, n, repeats):
    rng = np.random.default_rng(1)
    pos = rng.random((n, 2))
    ang = rng.random(n) * 2 * np.pi
    return timeit(lambda: mod.pair_torques(pos, ang, 300.0, 0.1, 1.0, 1.0,
                                           1e-8), repeats)


def bench_bessel(mod, n, repeats):
    x = np.geomspace(1e-3, 20.0, n)
    return timeit(lambda: mod.bessel_k1_many(x), repeats)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args()

    mods = [("numpy", pure)]
    if comp is not None:
        mods.append(("compiled", comp))
    else:
        print("compiled core not built; timing the NumPy core only")

    cases = [
        ("fv_rhs 31x31x21 lam=0", lambda m: bench_rhs(m, 31, 31, 21, 0.0,
                                                      args.repeats)),
        ("fv_rhs 31x31x21 lam=0.1", lambda m: bench_rhs(m, 31, 31, 21, 0.1,
                                                        args.repeats)),
        ("fv_rhs 64x64x32 lam=0.1", lambda m: bench_rhs(m, 64, 64, 32, 0.1,
                                                        args.repeats)),
        ("pair_torques N=8", lambda m: bench_torques(m, 8, args.repeats * 10)),
        ("pair_torques N=256", lambda m: bench_torques(m, 256, args.repeats)),
        ("bessel_k1 x 20000", lambda m: bench_bessel(m, 20000, args.repeats)),
    ]

    width = max(len(name) for name, _ in cases)
    header = f"{'case':<{width}}" + "".join(f"{n:>14}" for n, _ in mods)
    if len(mods) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, runner in cases:
        times = [runner(mod) for _, mod in mods]
        row = f"{name:<{width}}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
