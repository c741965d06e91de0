"""Dimensionless system parameters and dressed one-photon quantities.

All frequencies are expressed in units of the bare mechanical frequency,
i.e. omega_M = 1 internally.  The one-photon dressed frequency, level
shift and squeezing factor follow from the single-mode squeezing
transformation that diagonalizes the one-photon sector:

    omega_m1 = sqrt(1 + 4 g0)
    delta1   = (omega_m1 - 1) / 2
    eta1     = ln(1 + 4 g0) / 4
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from quadropt.errors import ParameterDomainError

#: Bare mechanical frequency in internal units.
OMEGA_M = 1.0


@dataclass(frozen=True)
class DampingEstimate:
    """Optional mechanical-damping substitution parameters."""

    gamma_m: float
    nbar_th: float = 0.0

    def __post_init__(self):
        if self.gamma_m < 0 or self.nbar_th < 0:
            raise ParameterDomainError("gamma_m and nbar_th must be non-negative")


@dataclass(frozen=True)
class SystemParams:
    """Model constants in units of omega_M.

    g0        : quadratic coupling strength
    gamma_c   : cavity-field decay rate
    n_fock    : bare phonon-basis truncation
    n_squeezed: squeezed phonon-basis truncation
    """

    g0: float
    gamma_c: float
    n_fock: int = 40
    n_squeezed: int = 30
    damping_estimate: Optional[DampingEstimate] = None

    def __post_init__(self):
        if not self.g0 > -0.25:
            raise ParameterDomainError(
                f"one-photon stability requires g0 > -1/4, got g0={self.g0}"
            )
        if not self.gamma_c > 0:
            raise ParameterDomainError(f"gamma_c must be positive, got {self.gamma_c}")
        if self.n_squeezed < 2 or self.n_fock < 2:
            raise ParameterDomainError("truncations n_fock and n_squeezed must be >= 2")
        if self.n_squeezed > self.n_fock:
            raise ParameterDomainError(
                f"n_squeezed ({self.n_squeezed}) must not exceed n_fock ({self.n_fock})"
            )


@dataclass(frozen=True)
class DressedParams:
    """One-photon dressed quantities: frequency, level shift, squeezing factor."""

    omega_m1: float
    delta1: float
    eta1: float


def derive_dressed(params: SystemParams) -> DressedParams:
    """Closed-form dressed triple for the one-photon sector."""
    omega_m1 = math.sqrt(1.0 + 4.0 * params.g0)
    delta1 = 0.5 * (omega_m1 - OMEGA_M)
    eta1 = 0.25 * math.log(1.0 + 4.0 * params.g0)
    return DressedParams(omega_m1=omega_m1, delta1=delta1, eta1=eta1)


def apply_damping_estimate(params: SystemParams) -> complex:
    """Effective complex mechanical frequency.

    With a damping estimate present this is omega_M - i gamma_M (2 nbar + 1)/2,
    to be substituted for omega_M in the amplitude denominators; without one
    it is the purely real omega_M.
    """
    if params.damping_estimate is None:
        return complex(OMEGA_M, 0.0)
    d = params.damping_estimate
    return OMEGA_M - 0.5j * d.gamma_m * (2.0 * d.nbar_th + 1.0)


def sideband_regime(params: SystemParams) -> str:
    """Classify the sideband-resolution regime for output metadata.

    'resolved' follows the convention omega_M > gamma_c; the intermediate
    regime omega_m1 > gamma_c >= omega_M is flagged rather than classified.
    """
    omega_m1 = derive_dressed(params).omega_m1
    if OMEGA_M > params.gamma_c:
        return "resolved"
    if omega_m1 > params.gamma_c >= OMEGA_M:
        return "dressed-resolved-only"
    return "unresolved"
