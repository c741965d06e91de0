"""Timing comparison of the compiled RK4 kernel against the numpy fallback.

Runs the emission setup (g0=0.6, gamma_c=0.2, fock 0) on the default
continuum grid for a fixed number of steps through both backends, checks
they agree to round-off, and prints wall times and the speedup.

Usage: python3 benchmarks/bench_integrator.py [--steps N]
"""

import argparse
import time

import numpy as np

from quadropt.kernels import BACKEND, integrate_kernel, integrate_kernel_python
from quadropt.oracle import ContinuumGrid, default_step, emission_initial
from quadropt.params import OMEGA_M, SystemParams, derive_dressed
from quadropt.oracle import oracle_overlap_matrix


def run(kernel, init, args):
    t0 = time.perf_counter()
    a, b = kernel(init.a_amp.copy(), init.b_amp.copy(), *args)
    return a, b, time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--steps", type=int, default=400)
    opts = parser.parse_args()

    params = SystemParams(g0=0.6, gamma_c=0.2)
    dressed = derive_dressed(params)
    grid = ContinuumGrid()
    init = emission_initial(0, params, grid)
    nf, ns = init.b_amp.shape[0], init.a_amp.shape[0]
    M = oracle_overlap_matrix(params, nf, ns)
    h = default_step(params, grid, nf)
    args = (
        grid.deltas(),
        M,
        grid.mode_coupling(params.gamma_c),
        OMEGA_M,
        dressed.omega_m1,
        dressed.delta1,
        h,
        opts.steps,
    )

    print(f"active backend: {BACKEND}")
    print(f"problem size: {nf} x {grid.k_count} field amplitudes, "
          f"{opts.steps} RK4 steps of h={h:.4g}")

    if BACKEND != "compiled":
        print("compiled extension not available; timing the fallback only")
        _, _, t_py = run(integrate_kernel_python, init, args)
        print(f"python fallback: {t_py:.2f} s "
              f"({opts.steps / t_py:.1f} steps/s)")
        return

    a_c, b_c, t_c = run(integrate_kernel, init, args)
    a_p, b_p, t_p = run(integrate_kernel_python, init, args)
    diff = max(np.max(np.abs(a_c - a_p)), np.max(np.abs(b_c - b_p)))
    print(f"compiled:        {t_c:.2f} s ({opts.steps / t_c:.1f} steps/s)")
    print(f"python fallback: {t_p:.2f} s ({opts.steps / t_p:.1f} steps/s)")
    print(f"speedup: {t_p / t_c:.2f}x, max amplitude difference {diff:.2e}")


if __name__ == "__main__":
    main()
