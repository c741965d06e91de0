"""Frequency grids: uniform spectral grids and feature-refined quadrature grids."""

from __future__ import annotations

import numpy as np

#: Default spectral window and sampling, covering every feature of the
#: emission/scattering figures with at least three points per gamma_c/10.
DEFAULT_GRID_MIN = -6.0
DEFAULT_GRID_MAX = 8.0
DEFAULT_GRID_POINTS = 4001


def spectral_grid(
    lo: float = DEFAULT_GRID_MIN,
    hi: float = DEFAULT_GRID_MAX,
    points: int = DEFAULT_GRID_POINTS,
) -> np.ndarray:
    if not hi > lo:
        raise ValueError(f"grid bounds out of order: [{lo}, {hi}]")
    if points < 2:
        raise ValueError("grid needs at least two points")
    return np.linspace(lo, hi, points)


def quadrature_grid(
    features,
    span,
    base_spacing: float,
    far: float = 200.0,
    refine: int = 1,
) -> np.ndarray:
    """Composite grid refined around narrow features.

    features : iterable of (center, width) pairs; each contributes nodes at
               local spacing width/10/refine across +-8 widths.
    span     : (lo, hi) window covered at base_spacing/refine.
    far      : geometric tail nodes extend to +-far so the leftover analytic
               tail is dominated by the 1/x^2 falloff.
    """
    lo, hi = span
    nodes = [np.arange(lo, hi + base_spacing / refine / 2, base_spacing / refine)]
    for center, width in features:
        step = width / 10.0 / refine
        nodes.append(np.arange(center - 8 * width, center + 8 * width + step / 2, step))
    # geometric coarsening out to +-far; integrands decay like 1/x^2 there
    n_tail = 40 * refine
    nodes.append(-np.geomspace(max(abs(lo), 1.0), far, n_tail))
    nodes.append(np.geomspace(max(abs(hi), 1.0), far, n_tail))
    grid = np.unique(np.concatenate(nodes))
    return grid
