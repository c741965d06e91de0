"""Closed-form single-photon emission: amplitudes, spectra, long-time
reduced phonon state, and photon-phonon linear entropy.

The long-time amplitude for initial phonon number n0 is a sum of simple
poles over the dressed index n,

    B_{n0,m}(Dk) = sum_n sqrt(gamma_c/2pi) M[m,n] M[n0,n]
                   / (Dk - delta1 - n*omega_m1 + m*omega_M + i*gamma_c/2),

with M the squeezed-state overlap matrix.  The long-time phase
exp(-i(Dk + m*omega_M)t) is fixed at t = 0 throughout: spectra contract
B B* at equal final index and the entropy depends on |rho_{l,l'}|^2, so
no reported observable depends on t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from quadropt.errors import ToleranceError, TruncationError
from quadropt.overlaps import OverlapMatrix, overlap_matrix
from quadropt.params import (
    OMEGA_M,
    DressedParams,
    SystemParams,
    apply_damping_estimate,
    derive_dressed,
    sideband_regime,
)
from quadropt.poles import (
    check_poles_lower_half,
    eval_pole_sum,
    pair_integral_full,
    pair_integral_tails,
)
from quadropt.spectra import ResonanceLine, SpectralDensity
from quadropt.states import MechState, linear_entropy  # noqa: F401  (re-export)

#: Resonance lines with squared overlap weight above this fraction of the
#: strongest line must lie inside the requested grid, else a coverage
#: warning is attached to the result metadata.
COVERAGE_WEIGHT_THRESHOLD = 1e-5

#: Significance cutoff for initial density-matrix elements.
RHO_SIGNIFICANT = 1e-14


@dataclass
class EmissionAmplitude:
    """Amplitudes B_{n0,m}(Dk) on a grid, plus their pole-residue form."""

    n0: int
    grid: np.ndarray
    values: np.ndarray  # (n_fock, len(grid)) complex
    residues: np.ndarray  # (n_fock, n_squeezed)
    poles: np.ndarray  # (n_fock, n_squeezed) complex, lower half-plane
    metadata: dict = field(default_factory=dict)

    def total_probability(self) -> float:
        """Exact sum_m integral |B|^2 dDk over the whole real line."""
        total = 0.0
        for m in range(self.values.shape[0]):
            total += pair_integral_full(
                self.residues[m], self.poles[m], self.residues[m], self.poles[m]
            ).real
        return total


def emission_pole_data(
    n0: int,
    params: SystemParams,
    overlaps: Optional[OverlapMatrix] = None,
    dressed: Optional[DressedParams] = None,
):
    """Residues and poles of B_{n0,m} for every final index m."""
    overlaps = overlaps if overlaps is not None else overlap_matrix(params)
    dressed = dressed if dressed is not None else derive_dressed(params)
    M = overlaps.entries
    nf, ns = M.shape
    if not 0 <= n0 < nf:
        raise TruncationError(f"initial fock index {n0} outside n_fock={nf}")
    omega_eff = apply_damping_estimate(params)
    prefac = math.sqrt(params.gamma_c / (2.0 * math.pi))
    residues = (prefac * M * M[n0, :][None, :]).astype(complex)
    n_idx = np.arange(ns)
    m_idx = np.arange(nf)
    poles = (
        dressed.delta1
        + n_idx[None, :] * dressed.omega_m1
        - m_idx[:, None] * omega_eff
        - 0.5j * params.gamma_c
    )
    check_poles_lower_half(poles)
    return residues, poles


def emission_amplitudes(
    n0: int, params: SystemParams, grid: np.ndarray
) -> EmissionAmplitude:
    overlaps = overlap_matrix(params)
    dressed = derive_dressed(params)
    residues, poles = emission_pole_data(n0, params, overlaps, dressed)
    values = eval_pole_sum(residues, poles, np.asarray(grid, dtype=float))
    meta = {
        "ortho_defect": overlaps.ortho_defect,
        "coverage_warnings": _coverage_warnings(residues, poles, grid),
    }
    return EmissionAmplitude(
        n0=n0, grid=np.asarray(grid, dtype=float), values=values,
        residues=residues, poles=poles, metadata=meta,
    )


def _coverage_warnings(residues, poles, grid) -> List[str]:
    weights = np.abs(residues) ** 2
    if weights.max() == 0:
        return []
    lo, hi = float(np.min(grid)), float(np.max(grid))
    strong = weights > COVERAGE_WEIGHT_THRESHOLD * weights.max()
    outside = strong & ((poles.real < lo) | (poles.real > hi))
    warnings = []
    if np.any(outside):
        positions = np.sort(poles.real[outside])
        warnings.append(
            f"{positions.size} resonance line(s) with significant weight lie "
            f"outside the grid [{lo}, {hi}]: nearest at {positions[0]:.4g} "
            f"and {positions[-1]:.4g}"
        )
    return warnings


def _significant_indices(rho: np.ndarray) -> np.ndarray:
    mags = np.max(np.abs(rho), axis=1)
    return np.nonzero(mags > RHO_SIGNIFICANT * max(mags.max(), 1e-300))[0]


def emission_spectrum(
    initial: MechState, params: SystemParams, grid: np.ndarray
) -> SpectralDensity:
    """S(Dk) = sum_{l,m,n} rho_mn(0) B_{m,l}(Dk) B*_{n,l}(Dk)."""
    grid = np.asarray(grid, dtype=float)
    overlaps = overlap_matrix(params)
    dressed = derive_dressed(params)
    rho = initial.rho
    sig = _significant_indices(rho)

    amps = {}
    res_all = {}
    poles_ref = None
    for m0 in sig:
        residues, poles = emission_pole_data(int(m0), params, overlaps, dressed)
        amps[int(m0)] = eval_pole_sum(residues, poles, grid)
        res_all[int(m0)] = residues
        poles_ref = poles

    s_complex = np.zeros(grid.shape, dtype=complex)
    diagonal = np.allclose(rho, np.diag(np.diag(rho)), atol=RHO_SIGNIFICANT)
    for m0 in sig:
        if diagonal:
            s_complex += rho[m0, m0].real * np.sum(np.abs(amps[int(m0)]) ** 2, axis=0)
        else:
            for n0 in sig:
                if abs(rho[m0, n0]) <= RHO_SIGNIFICANT:
                    continue
                s_complex += rho[m0, n0] * np.sum(
                    amps[int(m0)] * amps[int(n0)].conj(), axis=0
                )

    imag_max = float(np.max(np.abs(s_complex.imag)))
    s_max = float(np.max(np.abs(s_complex.real)))
    if imag_max > 1e-12 * max(s_max, 1e-300):
        raise ToleranceError(
            f"spectrum acquired imaginary part {imag_max:.2e} (max S {s_max:.2e})"
        )
    values = s_complex.real
    neg = float(np.min(values))
    if neg < -1e-12 * max(s_max, 1e-300):
        raise ToleranceError(f"spectrum went negative ({neg:.2e}) beyond round-off")
    values = np.maximum(values, 0.0)

    norm = float(np.trapezoid(values, grid))
    tail = _spectrum_tail(rho, sig, res_all, poles_ref, float(grid[0]), float(grid[-1]))

    # probability weight pushed outside the dressed-index truncation; each
    # initial row of M should resolve to unit weight when ns is adequate
    M = overlaps.entries
    trunc_bound = float(
        sum(rho[m0, m0].real * abs(1.0 - float(np.sum(M[int(m0), :] ** 2))) for m0 in sig)
    )

    meta = {
        "truncated_weight_bound": trunc_bound,
        "sideband_regime": sideband_regime(params),
        "ortho_defect": overlaps.ortho_defect,
        "initial_label": initial.label,
        "initial_trace_deficit": initial.trace_deficit,
        "coverage_warnings": _coverage_warnings(
            res_all[int(sig[0])], poles_ref, grid
        ) if len(sig) else [],
        "dressed": {
            "omega_m1": dressed.omega_m1,
            "delta1": dressed.delta1,
            "eta1": dressed.eta1,
        },
    }
    return SpectralDensity(
        grid=grid, values=values, norm=norm, tail_correction=tail, metadata=meta
    )


def _spectrum_tail(rho, sig, res_all, poles, a, b) -> float:
    """Exact integral of the spectrum outside [a, b]."""
    if poles is None:
        return 0.0
    tail = 0.0 + 0.0j
    nf = poles.shape[0]
    for m0 in sig:
        for n0 in sig:
            w = rho[m0, n0]
            if abs(w) <= RHO_SIGNIFICANT:
                continue
            for l in range(nf):
                c1 = res_all[int(m0)][l]
                c2 = res_all[int(n0)][l]
                if not np.any(c1) or not np.any(c2):
                    continue
                tail += w * pair_integral_tails(c1, poles[l], c2, poles[l], a, b)
    return float(tail.real)


def resonance_lines(
    initial: Union[int, str, MechState],
    params: SystemParams,
    max_order: Optional[int] = None,
) -> List[ResonanceLine]:
    """Pole positions delta1 + n*omega_m1 - m*omega_M with overlap weights.

    ``initial`` selects which transitions carry weight: a fock index, the
    string 'even'/'odd', or a MechState whose diagonal weights the lines.
    """
    overlaps = overlap_matrix(params)
    dressed = derive_dressed(params)
    M = overlaps.entries
    nf, ns = M.shape
    max_n = min(ns, max_order + 1) if max_order is not None else ns
    max_m = min(nf, max_order + 1) if max_order is not None else nf

    if isinstance(initial, MechState):
        pops = np.diag(initial.rho).real
    elif initial == "even":
        pops = np.asarray([1.0 if i % 2 == 0 else 0.0 for i in range(nf)])
    elif initial == "odd":
        pops = np.asarray([1.0 if i % 2 == 1 else 0.0 for i in range(nf)])
    else:
        pops = np.zeros(nf)
        pops[int(initial)] = 1.0

    lines = []
    for n in range(max_n):
        # weight of the dressed component |n~> summed over initial occupation
        inject = float(np.sum(pops * np.abs(M[:, n]) ** 2))
        if inject <= 1e-16:
            continue
        for m in range(max_m):
            # parity-forbidden transitions drop out through M[m, n] = 0
            w = inject * M[m, n] ** 2
            if w <= 1e-16:
                continue
            pos = dressed.delta1 + n * dressed.omega_m1 - m * OMEGA_M
            lines.append(
                ResonanceLine(
                    n=n,
                    m=m,
                    position=float(pos),
                    weight=float(w),
                    transition_label=f"|1>|~{n}> -> |0>|{m}>",
                )
            )
    lines.sort(key=lambda line: line.position)
    return lines


def sideband_ratio_estimate(params: SystemParams) -> float:
    """Perturbative sideband-to-Lorentzian height ratio 1 + 8 g0^2/gamma_c^2."""
    return 1.0 + 8.0 * params.g0**2 / params.gamma_c**2


def emission_reduced_density(initial: MechState, params: SystemParams) -> MechState:
    """Long-time reduced phonon state from the exact pole-pair kernel.

    rho_{l,l'} = i gamma_c sum rho_mn(0) M[l,s] M[m,s] M[n,s'] M[l',s']
                 / ((l-l') omega_M + (s'-s) omega_m1 + i gamma_c)

    Coherence phases exp(-i(l-l') omega_M t) are fixed at t = 0; the
    entropy only sees |rho_{l,l'}|.  Hermiticity is verified numerically,
    not assumed.
    """
    overlaps = overlap_matrix(params)
    dressed = derive_dressed(params)
    M = overlaps.entries
    nf, ns = M.shape
    gamma_c = params.gamma_c

    x = M.T @ initial.rho @ M  # (ns, ns) contraction over initial indices
    l_idx = np.arange(nf)
    s_idx = np.arange(ns)
    denom = (
        (l_idx[:, None, None, None] - l_idx[None, :, None, None]) * OMEGA_M
        + (s_idx[None, None, None, :] - s_idx[None, None, :, None]) * dressed.omega_m1
        + 1j * gamma_c
    )
    rho_out = 1j * gamma_c * np.einsum(
        "ls,pt,st,lpst->lp", M, M, x, 1.0 / denom, optimize=True
    )

    herm = float(np.max(np.abs(rho_out - rho_out.conj().T)))
    if herm > 1e-8:
        raise ToleranceError(
            f"reduced density anti-Hermitian residual {herm:.2e} beyond tolerance"
        )
    trace = float(np.trace(rho_out).real)
    if abs(trace - 1.0) > 1e-3 + initial.trace_deficit:
        raise TruncationError(
            f"reduced-density trace {trace:.6f} deviates beyond truncation tolerance"
        )
    return MechState(rho=rho_out, label="reduced", trace_deficit=1.0 - trace)


def emission_entropy_sweep(
    n0: int,
    g0_values: Sequence[float],
    gamma_c: float,
    n_fock: int = 40,
    n_squeezed: int = 30,
) -> np.ndarray:
    """Linear entropy of the long-time reduced state versus g0 (fock start)."""
    out = np.empty(len(g0_values))
    for i, g0 in enumerate(g0_values):
        params = SystemParams(
            g0=float(g0), gamma_c=gamma_c, n_fock=n_fock, n_squeezed=n_squeezed
        )
        state = MechState(
            rho=np.zeros((n_fock, n_fock), dtype=complex), label=f"fock {n0}"
        )
        state.rho[n0, n0] = 1.0
        out[i] = linear_entropy(emission_reduced_density(state, params))
    return out
