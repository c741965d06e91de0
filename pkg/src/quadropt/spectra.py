"""Spectral-density container, resonance lines, and peak finding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np


@dataclass
class SpectralDensity:
    """Sampled spectrum S(Delta_k) with normalization bookkeeping.

    norm is the trapezoid integral over the grid; tail_correction is the
    exact pole-pair integral of the closed form beyond the grid window, so
    norm + tail_correction should be 1 (up to truncation) for pure states.
    """

    grid: np.ndarray
    values: np.ndarray
    norm: float
    tail_correction: float
    metadata: dict = field(default_factory=dict)

    def total(self) -> float:
        return self.norm + self.tail_correction


@dataclass(frozen=True)
class ResonanceLine:
    """A pole position Delta_k = delta1 + n*omega_m1 - m*omega_M."""

    n: int
    m: int
    position: float
    weight: float
    transition_label: str


def local_maxima(
    grid: np.ndarray, values: np.ndarray, rel_threshold: float = 0.05
) -> np.ndarray:
    """Positions of strict local maxima above rel_threshold * max(values)."""
    v = np.asarray(values)
    idx = np.nonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:]))[0] + 1
    if idx.size == 0:
        return np.asarray([])
    idx = idx[v[idx] >= rel_threshold * v.max()]
    return np.asarray(grid)[idx]


def nearest_line(position: float, lines: List[ResonanceLine]) -> Optional[ResonanceLine]:
    if not lines:
        return None
    return min(lines, key=lambda line: abs(line.position - position))
