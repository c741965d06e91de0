import pytest

from quadropt.errors import ConfigError
from quadropt.figures import figure_presets
from quadropt.params import SystemParams, derive_dressed


def test_unknown_preset():
    with pytest.raises(ConfigError):
        figure_presets("fig1")


def test_fig2_panels():
    panels = figure_presets("fig2")
    names = [name for name, _ in panels]
    assert names == ["fig2a", "fig2b", "fig2c", "fig2d"]
    assert [cfg.g0 for _, cfg in panels] == [0.1, 0.2, 0.6, 2.0]
    assert panels[-1][1].gamma_c == 1.5
    assert all(cfg.mode == "emit-spectrum" for _, cfg in panels)


def test_fig3_initial_states():
    panels = figure_presets("fig3")
    assert [cfg.initial for _, cfg in panels] == [
        "fock:0",
        "fock:1",
        "coherent:1",
        "thermal:1",
    ]
    assert all(cfg.g0 == 0.6 for _, cfg in panels)


def test_fig4_sweep():
    panels = figure_presets("fig4")
    assert len(panels) == 3
    for n0, (name, cfg) in enumerate(panels):
        assert name == f"fig4_fock{n0}"
        assert cfg.mode == "emit-entropy-sweep"
        assert cfg.sweep == ("g0", 0.0, 1.2, 121)
        assert cfg.initial == f"fock:{n0}"


def test_fig5_resonant_broad_packets():
    panels = figure_presets("fig5")
    for _, cfg in panels:
        assert cfg.mode == "scatter-spectrum"
        assert cfg.epsilon == 1.2
        d = derive_dressed(SystemParams(g0=cfg.g0, gamma_c=cfg.gamma_c))
        assert cfg.delta0 == pytest.approx(d.delta1)


def test_fig6_narrow_packets():
    panels = figure_presets("fig6")
    assert all(cfg.epsilon == 0.02 for _, cfg in panels)
    # panel c drives the n=2 dressed level
    cfg_c = dict(panels)["fig6c"]
    d = derive_dressed(SystemParams(g0=0.8, gamma_c=0.2))
    assert cfg_c.delta0 == pytest.approx(d.delta1 + 2.0 * d.omega_m1)
    assert dict(panels)["fig6d"].initial == "coherent:1"


def test_fig7_panels():
    panels = dict(figure_presets("fig7"))
    assert set(panels) == {
        "fig7a_g04",
        "fig7a_g08",
        "fig7b_fock0",
        "fig7b_fock1",
        "fig7b_fock2",
    }
    a = panels["fig7a_g08"]
    assert a.sweep[0] == "delta0" and a.epsilon == 0.02
    b = panels["fig7b_fock2"]
    assert b.sweep == ("g0", 0.1, 1.0, 19)
    # packet center left unset: tracks the matched resonance per g0
    assert b.delta0 is None
