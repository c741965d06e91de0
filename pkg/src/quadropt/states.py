"""Initial and reduced mechanical states in the truncated Fock basis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from quadropt.errors import ParameterDomainError, TruncationError
from quadropt.params import SystemParams

#: Largest tolerated probability weight lost to truncation of an initial state.
TRACE_DEFICIT_LIMIT = 1e-3


@dataclass
class MechState:
    """Phonon density matrix with a provenance label.

    The matrix is kept exactly as truncated; any trace deficit is reported
    instead of being renormalized away, so truncation errors stay visible
    downstream (e.g. in entropies).
    """

    rho: np.ndarray
    label: str
    trace_deficit: float = field(default=0.0)

    @property
    def n_fock(self) -> int:
        return self.rho.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.rho).real)

    def is_pure(self, tol: float = 1e-10) -> bool:
        purity = float(np.trace(self.rho @ self.rho).real)
        return abs(purity - self.trace() ** 2) <= tol

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))


def fock_state(n0: int, params: SystemParams) -> MechState:
    if not 0 <= n0 < params.n_fock:
        raise ParameterDomainError(f"fock index {n0} outside truncation {params.n_fock}")
    rho = np.zeros((params.n_fock, params.n_fock), dtype=complex)
    rho[n0, n0] = 1.0
    return MechState(rho=rho, label=f"fock {n0}")


def coherent_state(beta: complex, params: SystemParams) -> MechState:
    """Truncated |beta><beta| with rho_mn = exp(-|beta|^2) beta^m beta*^n / sqrt(m! n!)."""
    nf = params.n_fock
    m = np.arange(nf)
    if beta == 0:
        amp = np.zeros(nf, dtype=complex)
        amp[0] = 1.0
    else:
        log_mag = m * math.log(abs(beta)) - 0.5 * gammaln(m + 1) - 0.5 * abs(beta) ** 2
        amp = np.exp(log_mag) * np.exp(1j * m * np.angle(complex(beta)))
    rho = np.outer(amp, amp.conj())
    return _with_deficit(rho, f"coherent {beta}", params)


def thermal_state(nbar: float, params: SystemParams) -> MechState:
    """Truncated thermal state, diagonal nbar^m / (1+nbar)^(m+1)."""
    if nbar < 0:
        raise ParameterDomainError("thermal occupation must be non-negative")
    m = np.arange(params.n_fock)
    probs = nbar**m / (1.0 + nbar) ** (m + 1)
    return _with_deficit(np.diag(probs).astype(complex), f"thermal {nbar}", params)


def _with_deficit(rho: np.ndarray, label: str, params: SystemParams) -> MechState:
    deficit = 1.0 - float(np.trace(rho).real)
    if deficit > TRACE_DEFICIT_LIMIT:
        # crude headroom estimate: tails shrink roughly geometrically
        required = int(math.ceil(params.n_fock * (1.0 + 10.0 * deficit)))
        raise TruncationError(
            f"truncated trace deficit {deficit:.2e} exceeds {TRACE_DEFICIT_LIMIT:.0e} "
            f"for {label}; increase n_fock (roughly to {required})",
            required_n_fock=required,
        )
    return MechState(rho=rho, label=label, trace_deficit=deficit)


def initial_state(kind: str, params: SystemParams) -> MechState:
    """Parse a state spec of the form 'fock:N', 'coherent:B', or 'thermal:NBAR'."""
    try:
        name, _, arg = kind.partition(":")
        name = name.strip().lower()
        if name == "fock":
            return fock_state(int(arg), params)
        if name == "coherent":
            return coherent_state(complex(arg), params)
        if name == "thermal":
            return thermal_state(float(arg), params)
    except ValueError as exc:
        raise ParameterDomainError(f"bad state spec {kind!r}: {exc}") from exc
    raise ParameterDomainError(f"unknown state kind {kind!r}")


def linear_entropy(state: MechState) -> float:
    """E_l = 1 - Tr(rho^2); zero for pure states, bounded by 1."""
    rho = state.rho
    herm = state.hermiticity_defect()
    if herm > 1e-8 * max(1.0, float(np.max(np.abs(rho)))):
        raise ParameterDomainError(f"density matrix not Hermitian (defect {herm:.2e})")
    return 1.0 - float(np.trace(rho @ rho).real)
