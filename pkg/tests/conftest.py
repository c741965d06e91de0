"""Shared fixtures.

The time-domain integration for the (g0=0.2, gamma_c=0.2) emission run is
needed by several tests (acceptance comparison, sensitivity check), so it
runs once per session and the resulting field is shared.
"""

import time

import pytest

from quadropt.oracle import ContinuumGrid, emission_initial, integrate_amplitudes
from quadropt.params import SystemParams


@pytest.fixture(scope="session")
def fig2b_oracle():
    """Oracle emission run at g0=0.2, gamma_c=0.2, fock 0, T=20/gamma_c."""
    params = SystemParams(g0=0.2, gamma_c=0.2)
    grid = ContinuumGrid()
    init = emission_initial(0, params, grid)
    t0 = time.perf_counter()
    field = integrate_amplitudes(init, params, grid, 20.0 / params.gamma_c)
    wall = time.perf_counter() - t0
    return params, grid, field, wall
