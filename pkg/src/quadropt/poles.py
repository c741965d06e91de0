"""Pole-residue machinery for the closed-form amplitudes.

Every long-time amplitude in this package is a finite sum of simple poles

    f(x) = sum_j c_j / (x - z_j),     Im z_j < 0,

so products f g* integrate in closed form over the full real line and
over the tails beyond any finite window, via residues and the exact
antiderivative log((x - z_u)/(x - z_l)) / (z_u - z_l).
"""

from __future__ import annotations

import numpy as np

from quadropt.errors import ParameterDomainError


def check_poles_lower_half(poles: np.ndarray) -> None:
    if np.any(poles.imag >= 0):
        raise ParameterDomainError(
            "amplitude pole crossed into the closed upper half-plane; "
            "the damping estimate is too large for this truncation"
        )


def eval_pole_sum(residues: np.ndarray, poles: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Evaluate sum_j c_j/(x - z_j) for each channel row on ``grid``.

    residues, poles: shape (n_channels, n_poles); returns (n_channels, len(grid)).
    """
    residues = np.atleast_2d(residues)
    poles = np.atleast_2d(poles)
    out = np.empty((residues.shape[0], grid.size), dtype=complex)
    # channel-by-channel keeps the (n_poles x grid) temporary small
    for c in range(residues.shape[0]):
        out[c] = residues[c] @ (1.0 / (grid[None, :] - poles[c][:, None]))
    return out


def pair_integral_full(c1, z1, c2, z2) -> complex:
    """Exact integral of f1 f2* over the whole real line.

    Closing the contour in the upper half-plane picks up only the
    conjugated poles of f2*.
    """
    c1 = np.asarray(c1, dtype=complex).ravel()
    z1 = np.asarray(z1, dtype=complex).ravel()
    c2 = np.asarray(c2, dtype=complex).ravel()
    z2 = np.asarray(z2, dtype=complex).ravel()
    denom = z2.conj()[None, :] - z1[:, None]
    weights = c1[:, None] * c2.conj()[None, :]
    return complex(2j * np.pi * np.sum(weights / denom))


def pair_integral_tails(c1, z1, c2, z2, a: float, b: float) -> complex:
    """Exact integral of f1 f2* over (-inf, a] + [b, +inf).

    Computed as full-line minus window.  The window antiderivative keeps
    one principal log per factor: along the real axis x - zu stays in the
    lower half-plane and x - zl in the upper, so neither log crosses its
    cut.  (A single log of the ratio does cross the cut when the pole
    pair has well-separated real parts, and silently drops 2 pi i.)
    """
    c1 = np.asarray(c1, dtype=complex).ravel()
    z1 = np.asarray(z1, dtype=complex).ravel()
    c2 = np.asarray(c2, dtype=complex).ravel()
    z2 = np.asarray(z2, dtype=complex).ravel()
    zl = z1[:, None]
    zu = z2.conj()[None, :]
    dz = zu - zl
    window = (
        np.log(b - zu) - np.log(a - zu) - np.log(b - zl) + np.log(a - zl)
    ) / dz
    tails = 2j * np.pi / dz - window
    weights = c1[:, None] * c2.conj()[None, :]
    return complex(np.sum(weights * tails))


def trapezoid_weights(x: np.ndarray) -> np.ndarray:
    """Composite trapezoid weights for sorted, possibly non-uniform nodes."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need at least two quadrature nodes")
    w = np.zeros_like(x)
    dx = np.diff(x)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    return w
