"""Squeezed-number-state overlaps <m|S_b(eta)|n>.

S_b(eta) = exp[eta/2 (b^2 - b^dag^2)] couples Fock states of equal parity
only.  The closed-form double sum collapses to a single sum once the
Kronecker delta ties the two summation indices together; terms are
accumulated in log-magnitude plus sign to stay finite past m, n ~ 20.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from quadropt.params import SystemParams, derive_dressed


def overlap_element(m: int, n: int, eta: float) -> float:
    """Single overlap <m|S_b(eta)|n>.

    Exact zero is returned for odd m+n without evaluating the sum.
    """
    if m < 0 or n < 0:
        raise ValueError("Fock indices must be non-negative")
    if not math.isfinite(eta):
        raise ValueError("eta must be finite")
    if (m + n) % 2 == 1:
        return 0.0
    if eta == 0.0:
        return 1.0 if m == n else 0.0

    th = math.tanh(eta)
    log_ch = math.log(math.cosh(eta))
    # log(|th|) - log 2 rather than log(|th|/2): the quotient can underflow
    # to zero for subnormal eta while log(|th|) stays finite
    log_half_th = math.log(abs(th)) - math.log(2.0)
    sign_th = 1.0 if th > 0 else -1.0

    # delta_{m-2l', n-2l} forces l' = l + (m-n)/2; the admissible l range
    # reduces to [max(0, (n-m)/2), floor(n/2)] for equal-parity m, n.
    shift = (m - n) // 2
    l_lo = max(0, -shift)
    l_hi = n // 2

    log_prefac = 0.5 * (gammaln(m + 1) + gammaln(n + 1)) - (n + 0.5) * log_ch
    total = 0.0
    for l in range(l_lo, l_hi + 1):
        lp = l + shift
        log_term = (
            log_prefac
            - gammaln(l + 1)
            - gammaln(lp + 1)
            + (l + lp) * log_half_th
            + 2.0 * l * log_ch
            - gammaln(n - 2 * l + 1)
        )
        sign = (-1.0) ** lp * sign_th ** (l + lp)
        total += sign * math.exp(log_term)
    return total


@dataclass
class OverlapMatrix:
    """Truncated matrix of <m|S_b(eta1)|n>, m < n_fock, n < n_squeezed.

    ortho_defect is the worst deviation of the Gram matrix of well-converged
    columns from the identity; it quantifies the truncation error.
    """

    entries: np.ndarray
    eta: float
    ortho_defect: float = field(default=float("nan"))

    @property
    def n_fock(self) -> int:
        return self.entries.shape[0]

    @property
    def n_squeezed(self) -> int:
        return self.entries.shape[1]


# Columns whose index leaves at least this much headroom below n_fock are
# used for the orthonormality-defect report.
_ORTHO_HEADROOM = 10


def overlap_matrix(params: SystemParams) -> OverlapMatrix:
    """Overlap matrix at the one-photon squeezing factor of ``params``."""
    eta = derive_dressed(params).eta1
    nf, ns = params.n_fock, params.n_squeezed
    entries = np.zeros((nf, ns))
    for n in range(ns):
        for m in range(n % 2, nf, 2):
            entries[m, n] = overlap_element(m, n, eta)

    n_conv = max(0, min(ns, nf - _ORTHO_HEADROOM))
    if n_conv >= 1:
        g = entries[:, :n_conv].T @ entries[:, :n_conv]
        defect = float(np.max(np.abs(g - np.eye(n_conv))))
    else:
        defect = float("nan")
    return OverlapMatrix(entries=entries, eta=eta, ortho_defect=defect)
