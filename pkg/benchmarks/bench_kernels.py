#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the two hot kernels on simulation-sized workloads and prints a
speedup table.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from dronelink._kernels import _pure
from dronelink.antenna import random_rotations

try:
    from dronelink._kernels import _core
except ImportError:
    _core = None


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_chi(n_trials, m_elements):
    rng = np.random.default_rng(0)
    dirs = rng.normal(size=(n_trials, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    gs = random_rotations(rng, m_elements)
    dr = random_rotations(rng, n_trials)
    args = (
        np.ascontiguousarray(dirs),
        np.ascontiguousarray(gs[:, :, 0]),
        np.ascontiguousarray(gs[:, :, 1]),
        3,  # cross dipole, circular
        np.ascontiguousarray(dr[:, :, 0]),
        np.ascontiguousarray(dr[:, :, 1]),
        1,  # half-wave dipole
    )
    return args


def bench_mrc(n_trials, m_elements, k_drones):
    rng = np.random.default_rng(1)
    g = rng.normal(size=(n_trials, m_elements, k_drones)) + 1j * rng.normal(
        size=(n_trials, m_elements, k_drones)
    )
    p = rng.uniform(0.1, 10.0, size=(n_trials, k_drones))
    return np.ascontiguousarray(g), np.ascontiguousarray(p)


def main():
    rows = []
    chi_args = bench_chi(20_000, 100)
    t_pure = timeit(_pure.chi_pairs, *chi_args)
    t_core = timeit(_core.chi_pairs, *chi_args) if _core else float("nan")
    rows.append(("chi_pairs 20k x 100", t_pure, t_core))

    mrc_args = bench_mrc(2_000, 100, 20)
    t_pure = timeit(_pure.mrc_capacity_batch, *mrc_args)
    t_core = timeit(_core.mrc_capacity_batch, *mrc_args) if _core else float("nan")
    rows.append(("mrc 2k x (100x20)", t_pure, t_core))

    mrc_small = bench_mrc(20_000, 16, 4)
    t_pure = timeit(_pure.mrc_capacity_batch, *mrc_small)
    t_core = timeit(_core.mrc_capacity_batch, *mrc_small) if _core else float("nan")
    rows.append(("mrc 20k x (16x4)", t_pure, t_core))

    print(f"{'kernel':24s} {'numpy [ms]':>12s} {'cython [ms]':>12s} {'speedup':>9s}")
    for name, pure, core in rows:
        speed = pure / core if core == core else float("nan")
        print(f"{name:24s} {pure * 1e3:12.2f} {core * 1e3:12.2f} {speed:8.2f}x")
    if _core is None:
        print("compiled backend not available; showing NumPy numbers only")

    # consistency spot check while we are here
    if _core is not None:
        a = _pure.chi_pairs(*chi_args)
        b = _core.chi_pairs(*chi_args)
        assert np.allclose(a, b, atol=1e-12)
        print("backends agree to 1e-12 on the benchmark inputs")


if __name__ == "__main__":
    main()
