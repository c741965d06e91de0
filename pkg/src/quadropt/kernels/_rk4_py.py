"""Pure-numpy RK4 integrator for the single-photon amplitude equations.

The equations of motion couple the intracavity amplitudes A_m (dressed
basis) to the outside-field amplitudes B_{n,k} (bare basis x discretized
continuum).  Working in the interaction picture makes every free phase
exact; only the photon-hopping coupling is integrated by RK4, with the
oscillating phase vectors advanced multiplicatively and renormalized
periodically against drift.
"""

from __future__ import annotations

import numpy as np

_PHASE_RESYNC = 1024


def integrate_kernel(
    a0: np.ndarray,
    b0: np.ndarray,
    deltas: np.ndarray,
    overlap: np.ndarray,
    g: float,
    omega_m: float,
    omega_m1: float,
    delta1: float,
    h: float,
    nsteps: int,
):
    """Evolve lab-frame amplitudes (a0, b0) over nsteps of size h.

    overlap[n, m] = <n|S_b|m> couples bare index n to dressed index m;
    g is the per-mode hopping strength xi*sqrt(dk).
    Returns lab-frame (a, b) at the final time.
    """
    ns = a0.shape[0]
    nf, nk = b0.shape
    A = np.ascontiguousarray(a0, dtype=complex).copy()
    B = np.ascontiguousarray(b0, dtype=complex).copy()
    M = np.ascontiguousarray(overlap, dtype=float)

    alphas = delta1 + omega_m1 * np.arange(ns)
    bare = omega_m * np.arange(nf)
    e_half = np.exp(-0.5j * deltas * h)
    cA_half = np.exp(0.5j * alphas * h)
    dn_half = np.exp(-0.5j * bare * h)
    c_half = complex(np.sum(e_half))

    q = np.ones(nk, dtype=complex)  # exp(-i Delta_j t)
    cA = np.ones(ns, dtype=complex)  # exp(+i alpha_m t)
    dn = np.ones(nf, dtype=complex)  # exp(-i n omega_M t)

    def f_a(cA_t, dn_t, wvec):
        return -1j * g * cA_t * (M.T @ (dn_t * wvec))

    def u_b(cA_t, dn_t, a_t):
        return -1j * g * dn_t.conj() * (M @ (cA_t.conj() * a_t))

    for step in range(nsteps):
        q0 = q
        q1 = q0 * e_half
        q2 = q1 * e_half
        cA1 = cA * cA_half
        cA2 = cA1 * cA_half
        dn1 = dn * dn_half
        dn2 = dn1 * dn_half

        w0 = B @ q0
        w1 = B @ q1
        w2 = B @ q2

        ka1 = f_a(cA, dn, w0)
        u1 = u_b(cA, dn, A)
        ka2 = f_a(cA1, dn1, w1 + (0.5 * h) * c_half * u1)
        u2 = u_b(cA1, dn1, A + (0.5 * h) * ka1)
        ka3 = f_a(cA1, dn1, w1 + (0.5 * h) * nk * u2)
        u3 = u_b(cA1, dn1, A + (0.5 * h) * ka2)
        ka4 = f_a(cA2, dn2, w2 + h * c_half * u3)
        u4 = u_b(cA2, dn2, A + h * ka3)

        A += (h / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4)
        B += (h / 6.0) * (
            np.outer(u1, q0.conj())
            + np.outer(2.0 * (u2 + u3), q1.conj())
            + np.outer(u4, q2.conj())
        )

        q = q2
        cA = cA2
        dn = dn2
        if (step + 1) % _PHASE_RESYNC == 0:
            t = (step + 1) * h
            q = np.exp(-1j * deltas * t)
            cA = np.exp(1j * alphas * t)
            dn = np.exp(-1j * bare * t)

    a_lab = cA.conj() * A
    b_lab = (dn[:, None] * q[None, :]) * B
    return a_lab, b_lab
