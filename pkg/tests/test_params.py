import math

import pytest

from quadropt.errors import ParameterDomainError
from quadropt.params import (
    OMEGA_M,
    DampingEstimate,
    SystemParams,
    apply_damping_estimate,
    derive_dressed,
    sideband_regime,
)


def test_omega_m_is_unity():
    assert OMEGA_M == 1.0


def test_dressed_triple_g06():
    d = derive_dressed(SystemParams(g0=0.6, gamma_c=0.2))
    assert d.omega_m1 == pytest.approx(1.8439089, abs=1e-6)
    assert d.delta1 == pytest.approx(0.4219544, abs=1e-6)
    assert d.eta1 == pytest.approx(0.3059439, abs=1e-6)


def test_dressed_g075_is_exactly_two():
    d = derive_dressed(SystemParams(g0=0.75, gamma_c=0.2))
    assert d.omega_m1 == pytest.approx(2.0, abs=1e-12)
    assert d.delta1 == pytest.approx(0.5, abs=1e-12)


def test_dressed_uncoupled_limit():
    d = derive_dressed(SystemParams(g0=0.0, gamma_c=0.2))
    assert d.omega_m1 == 1.0
    assert d.delta1 == 0.0
    assert d.eta1 == 0.0


def test_dressed_closed_forms_consistent():
    # eta is fixed by omega_m1: e^{2 eta} = omega_m1
    for g0 in (0.05, 0.3, 1.7):
        d = derive_dressed(SystemParams(g0=g0, gamma_c=0.1))
        assert math.exp(2.0 * d.eta1) == pytest.approx(d.omega_m1, rel=1e-14)
        assert d.delta1 == pytest.approx(0.5 * (d.omega_m1 - 1.0), abs=1e-15)


@pytest.mark.parametrize("g0", [-0.25, -0.3, -1.0])
def test_stability_boundary_rejected(g0):
    with pytest.raises(ParameterDomainError):
        SystemParams(g0=g0, gamma_c=0.2)


def test_negative_but_stable_coupling_allowed():
    d = derive_dressed(SystemParams(g0=-0.2, gamma_c=0.2))
    assert d.omega_m1 == pytest.approx(math.sqrt(0.2))
    assert d.eta1 < 0


def test_bad_decay_and_truncations():
    with pytest.raises(ParameterDomainError):
        SystemParams(g0=0.5, gamma_c=0.0)
    with pytest.raises(ParameterDomainError):
        SystemParams(g0=0.5, gamma_c=-0.1)
    with pytest.raises(ParameterDomainError):
        SystemParams(g0=0.5, gamma_c=0.2, n_fock=10, n_squeezed=12)
    with pytest.raises(ParameterDomainError):
        SystemParams(g0=0.5, gamma_c=0.2, n_fock=1, n_squeezed=1)


def test_damping_substitution_values():
    p = SystemParams(g0=0.6, gamma_c=0.2)
    assert apply_damping_estimate(p) == 1.0 + 0.0j

    p = SystemParams(
        g0=0.6, gamma_c=0.2, damping_estimate=DampingEstimate(gamma_m=0.001)
    )
    assert apply_damping_estimate(p) == pytest.approx(1.0 - 0.0005j)

    # thermal occupation scales the linewidth by 2 nbar + 1
    p = SystemParams(
        g0=0.6, gamma_c=0.2,
        damping_estimate=DampingEstimate(gamma_m=0.001, nbar_th=1.0),
    )
    assert apply_damping_estimate(p) == pytest.approx(1.0 - 0.0015j)


def test_damping_estimate_domain():
    with pytest.raises(ParameterDomainError):
        DampingEstimate(gamma_m=-0.1)
    with pytest.raises(ParameterDomainError):
        DampingEstimate(gamma_m=0.1, nbar_th=-1.0)


def test_sideband_regime_labels():
    assert sideband_regime(SystemParams(g0=0.6, gamma_c=0.2)) == "resolved"
    # omega_m1 = 3 > 1.5 >= omega_M = 1
    assert sideband_regime(SystemParams(g0=2.0, gamma_c=1.5)) == "dressed-resolved-only"
    assert sideband_regime(SystemParams(g0=2.0, gamma_c=4.0)) == "unresolved"
