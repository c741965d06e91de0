import math

import numpy as np
import pytest

from quadropt.errors import ParameterDomainError, TruncationError
from quadropt.params import SystemParams
from quadropt.states import (
    MechState,
    coherent_state,
    fock_state,
    initial_state,
    linear_entropy,
    thermal_state,
)

PARAMS = SystemParams(g0=0.6, gamma_c=0.2)


def test_fock_state_basic():
    s = fock_state(3, PARAMS)
    assert s.rho[3, 3] == 1.0
    assert s.trace() == pytest.approx(1.0)
    assert s.trace_deficit == 0.0
    assert s.is_pure()
    with pytest.raises(ParameterDomainError):
        fock_state(40, PARAMS)
    with pytest.raises(ParameterDomainError):
        fock_state(-1, PARAMS)


def test_thermal_populations():
    s = thermal_state(1.0, PARAMS)
    assert s.rho[0, 0].real == pytest.approx(0.5, abs=1e-9)
    assert s.rho[1, 1].real == pytest.approx(0.25, abs=1e-9)
    assert np.allclose(s.rho, np.diag(np.diag(s.rho)))
    assert not s.is_pure()

    vac = thermal_state(0.0, PARAMS)
    assert vac.rho[0, 0] == 1.0
    assert vac.is_pure()

    with pytest.raises(ParameterDomainError):
        thermal_state(-0.5, PARAMS)


def test_coherent_state_values():
    s = coherent_state(1.0, PARAMS)
    assert s.rho[0, 0].real == pytest.approx(math.exp(-1.0), rel=1e-10)
    assert s.is_pure(tol=1e-9)
    assert s.hermiticity_defect() < 1e-14
    # rho_01 = e^{-1} * 1 / sqrt(1)
    assert s.rho[0, 1] == pytest.approx(math.exp(-1.0), rel=1e-10)


def test_coherent_complex_amplitude():
    s = coherent_state(1j, PARAMS)
    assert s.rho[0, 0].real == pytest.approx(math.exp(-1.0), rel=1e-10)
    assert s.rho[1, 0] == pytest.approx(1j * math.exp(-1.0), rel=1e-10)


def test_truncation_rejection_reports_requirement():
    with pytest.raises(TruncationError) as err:
        coherent_state(6.0, SystemParams(g0=0.6, gamma_c=0.2, n_fock=20, n_squeezed=10))
    assert err.value.required_n_fock is not None
    assert err.value.required_n_fock > 20


def test_initial_state_parsing():
    assert initial_state("fock:2", PARAMS).label == "fock 2"
    assert initial_state("thermal:1.0", PARAMS).rho[0, 0].real == pytest.approx(0.5)
    assert initial_state("coherent:1", PARAMS).rho[0, 0].real == pytest.approx(
        math.exp(-1.0)
    )
    for bad in ("squeezed:1", "fock:x", "fock", "thermal:-1"):
        with pytest.raises(ParameterDomainError):
            initial_state(bad, PARAMS)


def test_linear_entropy_values():
    assert linear_entropy(fock_state(0, PARAMS)) == pytest.approx(0.0, abs=1e-12)
    assert linear_entropy(coherent_state(1.0, PARAMS)) == pytest.approx(0.0, abs=1e-9)
    # geometric populations: 1 - sum p^2 = 2/3 at nbar = 1
    assert linear_entropy(thermal_state(1.0, PARAMS)) == pytest.approx(
        2.0 / 3.0, abs=1e-3
    )


def test_linear_entropy_rejects_non_hermitian():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 1] = 1.0
    with pytest.raises(ParameterDomainError):
        linear_entropy(MechState(rho=rho, label="broken"))
