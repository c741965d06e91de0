import math

import numpy as np
import pytest

from quadropt.emission import (
    emission_amplitudes,
    emission_entropy_sweep,
    emission_reduced_density,
    emission_spectrum,
    resonance_lines,
    sideband_ratio_estimate,
)
from quadropt.errors import ParameterDomainError, TruncationError
from quadropt.gridding import spectral_grid
from quadropt.params import DampingEstimate, SystemParams, derive_dressed
from quadropt.states import coherent_state, fock_state, linear_entropy, thermal_state

GRID = spectral_grid()
P06 = SystemParams(g0=0.6, gamma_c=0.2)


def test_uncoupled_amplitude_is_lorentzian():
    p = SystemParams(g0=0.0, gamma_c=0.2)
    amp = emission_amplitudes(0, p, GRID)
    expected = math.sqrt(0.2 / (2 * math.pi)) / (GRID + 0.1j)
    assert np.max(np.abs(amp.values[0] - expected)) < 1e-12
    assert np.max(np.abs(amp.values[1:])) < 1e-12


def test_uncoupled_spectrum_height():
    p = SystemParams(g0=0.0, gamma_c=0.2)
    s = emission_spectrum(fock_state(0, p), p, np.array([0.0]))
    assert s.values[0] == pytest.approx(2.0 / (math.pi * 0.2), rel=1e-10)


def test_amplitude_parity_zeros():
    amp = emission_amplitudes(0, P06, GRID)
    assert np.max(np.abs(amp.values[1::2])) == 0.0
    amp1 = emission_amplitudes(1, P06, GRID)
    assert np.max(np.abs(amp1.values[0::2])) == 0.0


def test_total_probability_unit():
    for n0 in (0, 1, 2):
        amp = emission_amplitudes(n0, P06, GRID)
        assert amp.total_probability() == pytest.approx(1.0, abs=1e-3)


def test_poles_in_lower_half_plane():
    amp = emission_amplitudes(0, P06, GRID)
    assert np.all(amp.poles.imag < 0)
    d = derive_dressed(P06)
    # pole (m=0, n=0) sits at delta1 - i gamma_c/2
    assert amp.poles[0, 0] == pytest.approx(d.delta1 - 0.1j, abs=1e-12)


def test_initial_index_out_of_range():
    with pytest.raises(TruncationError):
        emission_amplitudes(40, P06, GRID)


def test_resonance_line_anchors():
    lines = resonance_lines(0, P06)
    by_nm = {(ln.n, ln.m): ln for ln in lines}
    assert by_nm[(0, 0)].position == pytest.approx(0.4219544, abs=1e-6)
    assert by_nm[(0, 2)].position == pytest.approx(-1.5780456, abs=1e-6)
    # parity-forbidden lines carry no weight and are absent
    assert (0, 1) not in by_nm
    assert sorted(ln.position for ln in lines) == [ln.position for ln in lines]


def test_resonance_lines_uncoupled_collapse():
    p = SystemParams(g0=0.0, gamma_c=0.2)
    for ln in resonance_lines(0, p, max_order=6):
        assert ln.position == pytest.approx(float(ln.n - ln.m), abs=1e-12)


def test_sideband_ratio_estimate_values():
    assert sideband_ratio_estimate(SystemParams(g0=0.0, gamma_c=0.2)) == 1.0
    assert sideband_ratio_estimate(SystemParams(g0=0.2, gamma_c=0.2)) == pytest.approx(9.0)


def test_sideband_ratio_against_spectrum():
    # perturbative check: height of the Delta = delta1 - 2 sideband over
    # the main-peak Lorentzian tail
    p = SystemParams(g0=0.02, gamma_c=0.01)
    d = derive_dressed(p)
    pos = d.delta1 - 2.0
    s = emission_spectrum(fock_state(0, p), p, np.array([pos]))
    lorentz = (p.gamma_c / (2 * math.pi)) / ((pos - d.delta1) ** 2 + p.gamma_c**2 / 4)
    ratio = s.values[0] / lorentz
    assert ratio == pytest.approx(sideband_ratio_estimate(p), rel=0.10)


def test_spectrum_metadata_and_positivity():
    s = emission_spectrum(thermal_state(1.0, P06), P06, GRID)
    assert np.all(s.values >= 0.0)
    assert s.metadata["sideband_regime"] == "resolved"
    assert s.metadata["truncated_weight_bound"] < 1e-3
    assert s.metadata["dressed"]["omega_m1"] == pytest.approx(1.8439089, abs=1e-6)


def test_coverage_warning_on_narrow_grid():
    s = emission_spectrum(fock_state(0, P06), P06, np.linspace(-0.5, 1.0, 101))
    assert s.metadata["coverage_warnings"]


def test_damping_estimate_changes_little():
    damped = SystemParams(
        g0=0.6, gamma_c=0.2, damping_estimate=DampingEstimate(gamma_m=0.001)
    )
    s0 = emission_spectrum(fock_state(0, P06), P06, GRID)
    s1 = emission_spectrum(fock_state(0, damped), damped, GRID)
    rel = np.max(np.abs(s1.values - s0.values)) / np.max(s0.values)
    assert 0 < rel < 0.01


def test_damping_estimate_too_large_rejected():
    p = SystemParams(
        g0=0.6, gamma_c=0.2, damping_estimate=DampingEstimate(gamma_m=0.5, nbar_th=5.0)
    )
    with pytest.raises(ParameterDomainError):
        emission_amplitudes(0, p, GRID)


def test_reduced_density_uncoupled_identity():
    p = SystemParams(g0=0.0, gamma_c=0.2)
    for n0 in (0, 2):
        rho = emission_reduced_density(fock_state(n0, p), p)
        expected = np.zeros((p.n_fock, p.n_fock))
        expected[n0, n0] = 1.0
        assert np.max(np.abs(rho.rho - expected)) < 1e-10


def test_reduced_density_invariants():
    rho = emission_reduced_density(fock_state(0, P06), P06)
    assert rho.trace() == pytest.approx(1.0, abs=1e-3)
    assert rho.hermiticity_defect() < 1e-10
    # parity selection: only even-even coherences survive from |0>
    l_idx, lp_idx = np.meshgrid(np.arange(40), np.arange(40), indexing="ij")
    assert np.max(np.abs(rho.rho[(l_idx + lp_idx) % 2 == 1])) < 1e-14
    # positive semidefinite up to round-off
    assert np.linalg.eigvalsh(rho.rho).min() > -1e-10


def test_entropy_phase_invariance():
    rho = emission_reduced_density(coherent_state(1.0, P06), P06)
    base = linear_entropy(rho)
    for t in (0.37, 5.1):
        l_idx = np.arange(40)
        phases = np.exp(-1j * np.subtract.outer(l_idx, l_idx) * t)
        rotated = type(rho)(rho.rho * phases, label="rotated")
        assert linear_entropy(rotated) == pytest.approx(base, abs=1e-14)


def test_entropy_sweep_continuity_at_zero():
    vals = emission_entropy_sweep(0, [1e-4, 0.2], 0.2)
    assert vals[0] < 1e-4
    assert vals[1] > vals[0]
