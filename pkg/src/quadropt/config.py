"""Run configuration: validation, file loading, flag overrides.

A RunConfig is the single source of truth for one CLI invocation.  Its
to_dict/from_dict pair round-trips through the JSON sidecar written next
to every dataset, so any output file can be fed back as --config to
reproduce itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from typing import Optional, Tuple

from quadropt.errors import ConfigError

MODES = (
    "emit-spectrum",
    "scatter-spectrum",
    "emit-entropy-sweep",
    "scatter-entropy-sweep",
    "resonances",
    "oracle-check",
    "figure",
)

FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

DEFAULT_GRID: Tuple[float, float, int] = (-6.0, 8.0, 4001)

_SWEEP_VARS = {
    "emit-entropy-sweep": ("g0",),
    "scatter-entropy-sweep": ("delta0", "g0"),
}


def parse_grid(text: str) -> Tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid spec '{text}' is not MIN:MAX:POINTS")
    try:
        lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"grid spec '{text}': {exc}") from exc
    return lo, hi, pts


def parse_sweep(text: str) -> Tuple[str, float, float, int]:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"sweep spec '{text}' is not VAR:MIN:MAX:POINTS")
    try:
        return parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise ConfigError(f"sweep spec '{text}': {exc}") from exc


@dataclass
class RunConfig:
    mode: str
    g0: float = 0.6
    gamma_c: float = 0.2
    initial: str = "fock:0"
    delta0: Optional[float] = None
    epsilon: Optional[float] = None
    grid: Tuple[float, float, int] = field(default=DEFAULT_GRID)
    sweep: Optional[Tuple[str, float, float, int]] = None
    figure: Optional[str] = None
    out: Optional[str] = None
    format: str = "csv"
    n_fock: int = 40
    n_squeezed: int = 30

    def validate(self) -> "RunConfig":
        if self.mode not in MODES:
            raise ConfigError(
                f"unknown mode '{self.mode}'; expected one of {', '.join(MODES)}"
            )
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format '{self.format}'")
        lo, hi, pts = self.grid
        if not lo < hi:
            raise ConfigError(f"grid bounds out of order: {lo} >= {hi}")
        if pts < 2:
            raise ConfigError("grid needs at least two points")
        if self.mode.startswith("scatter") and self.epsilon is None:
            raise ConfigError(f"mode {self.mode} requires --epsilon")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ConfigError("packet width epsilon must be positive")
        if self.mode.endswith("entropy-sweep"):
            if self.sweep is None:
                raise ConfigError(f"mode {self.mode} requires --sweep")
            var, s_lo, s_hi, s_pts = self.sweep
            if var not in _SWEEP_VARS[self.mode]:
                raise ConfigError(
                    f"sweep variable '{var}' not valid for {self.mode}; "
                    f"choose from {_SWEEP_VARS[self.mode]}"
                )
            if not s_lo < s_hi:
                raise ConfigError(f"sweep bounds out of order: {s_lo} >= {s_hi}")
            if s_pts < 2:
                raise ConfigError("sweep needs at least two points")
        if self.mode == "figure":
            if self.figure not in FIGURES:
                raise ConfigError(
                    f"mode figure requires --figure, one of {', '.join(FIGURES)}"
                )
        kind = self.initial.split(":", 1)[0]
        if kind not in ("fock", "coherent", "thermal"):
            raise ConfigError(
                f"initial state '{self.initial}' is not fock:N, coherent:B or "
                f"thermal:NBAR"
            )
        return self

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "g0": self.g0,
            "gamma_c": self.gamma_c,
            "initial": self.initial,
            "grid": list(self.grid),
            "format": self.format,
            "n_fock": self.n_fock,
            "n_squeezed": self.n_squeezed,
        }
        if self.delta0 is not None:
            out["delta0"] = self.delta0
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        if self.sweep is not None:
            out["sweep"] = [self.sweep[0], *self.sweep[1:]]
        if self.figure is not None:
            out["figure"] = self.figure
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)} - {"out"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "mode" not in data:
            raise ConfigError("config is missing 'mode'")
        kwargs = dict(data)
        if "grid" in kwargs:
            g = kwargs["grid"]
            kwargs["grid"] = (float(g[0]), float(g[1]), int(g[2]))
        if "sweep" in kwargs and kwargs["sweep"] is not None:
            s = kwargs["sweep"]
            kwargs["sweep"] = (str(s[0]), float(s[1]), float(s[2]), int(s[3]))
        return cls(**kwargs).validate()


def load_config(path: str) -> RunConfig:
    """Read a config file; JSON sidecars (with a 'config' key) also work."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    return RunConfig.from_dict(data)
