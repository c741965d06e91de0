"""quadropt: exact single-photon spectra and photon-phonon entanglement
for a cavity with quadratic optomechanical coupling.

The mechanical frequency omega_M is the unit of every rate and detuning.
"""

__version__ = "0.1.0"

from quadropt.emission import (
    emission_amplitudes,
    emission_entropy_sweep,
    emission_reduced_density,
    emission_spectrum,
    resonance_lines,
    sideband_ratio_estimate,
)
from quadropt.errors import (
    ConfigError,
    ParameterDomainError,
    QuadroptError,
    StepSizeError,
    ToleranceError,
    TruncationError,
)
from quadropt.overlaps import OverlapMatrix, overlap_element, overlap_matrix
from quadropt.params import (
    OMEGA_M,
    DampingEstimate,
    DressedParams,
    SystemParams,
    derive_dressed,
    sideband_regime,
)
from quadropt.scattering import (
    WavePacket,
    resonant_drive,
    scattering_amplitudes,
    scattering_entropy_profile,
    scattering_entropy_vs_g0,
    scattering_reduced_density,
    scattering_resonances,
    scattering_spectrum,
)
from quadropt.spectra import ResonanceLine, SpectralDensity, local_maxima
from quadropt.states import (
    MechState,
    coherent_state,
    fock_state,
    initial_state,
    linear_entropy,
    thermal_state,
)

__all__ = [
    "OMEGA_M",
    "ConfigError",
    "DampingEstimate",
    "DressedParams",
    "MechState",
    "OverlapMatrix",
    "ParameterDomainError",
    "QuadroptError",
    "ResonanceLine",
    "SpectralDensity",
    "StepSizeError",
    "SystemParams",
    "ToleranceError",
    "TruncationError",
    "WavePacket",
    "coherent_state",
    "derive_dressed",
    "emission_amplitudes",
    "emission_entropy_sweep",
    "emission_reduced_density",
    "emission_spectrum",
    "fock_state",
    "initial_state",
    "linear_entropy",
    "local_maxima",
    "overlap_element",
    "overlap_matrix",
    "resonance_lines",
    "resonant_drive",
    "scattering_amplitudes",
    "scattering_entropy_profile",
    "scattering_entropy_vs_g0",
    "scattering_reduced_density",
    "scattering_resonances",
    "scattering_spectrum",
    "sideband_ratio_estimate",
    "sideband_regime",
    "thermal_state",
]
