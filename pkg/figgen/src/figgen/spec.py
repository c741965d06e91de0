"""Figure layouts: which CSVs go on which axes, and how they are labeled.

A FigureSpec is pure description; build_spec only resolves file names
against the data directory and checks they exist.  Parsing happens at
render time so a garbled file is reported with its path.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

SPECTRUM_XLABEL = r"$\Delta_k/\omega_M$"
SPECTRUM_YLABEL = r"$S(\Delta_k)\,\omega_M$"


class FiggenError(Exception):
    """Raised for missing or unreadable inputs."""


@dataclass
class PanelSpec:
    title: str
    # one axes can overlay several datasets
    csv_paths: List[str]
    labels: List[str]
    xlabel: str
    ylabel: str
    annotate: bool = False  # vertical resonance lines from sidecar metadata


@dataclass
class FigureSpec:
    name: str
    rows: int
    cols: int
    panels: List[PanelSpec] = field(default_factory=list)


def _resolve(data_dir: str, stem: str) -> str:
    path = os.path.join(data_dir, stem + ".csv")
    if not os.path.exists(path):
        raise FiggenError(f"dataset not found: {path}")
    return path


def load_dataset(path: str) -> Tuple[dict, np.ndarray]:
    """Read one CSV (with '#' metadata lines) and its JSON sidecar.

    Returns (metadata, rows).  Sidecar metadata, when present, overrides
    the CSV header comments since it carries full precision.
    """
    meta = {}
    rows = []
    header_seen = False
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    body = line[1:].strip()
                    if "=" in body:
                        key, _, value = body.partition("=")
                        meta[key.strip()] = value.strip()
                    continue
                if not header_seen:
                    header_seen = True
                    continue
                rows.append([float(v) for v in line.split(",")])
    except OSError as exc:
        raise FiggenError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise FiggenError(f"garbled dataset {path}: {exc}") from exc
    if not rows:
        raise FiggenError(f"dataset {path} contains no data rows")

    sidecar = os.path.splitext(path)[0] + ".json"
    if os.path.exists(sidecar):
        try:
            with open(sidecar, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            meta.update(doc.get("metadata", {}))
        except (OSError, json.JSONDecodeError) as exc:
            raise FiggenError(f"garbled sidecar {sidecar}: {exc}") from exc
    return meta, np.asarray(rows, dtype=float)


def build_spec(name: str, data_dir: str) -> FigureSpec:
    if name not in FIGURES:
        raise FiggenError(f"unknown figure '{name}'; expected one of {FIGURES}")

    def spectrum_panel(stem: str, title: str) -> PanelSpec:
        return PanelSpec(
            title=title,
            csv_paths=[_resolve(data_dir, stem)],
            labels=[""],
            xlabel=SPECTRUM_XLABEL,
            ylabel=SPECTRUM_YLABEL,
            annotate=True,
        )

    if name in ("fig2", "fig3", "fig5", "fig6"):
        stems = [f"{name}{p}" for p in "abcd"]
        panels = [spectrum_panel(stem, f"({p})") for stem, p in zip(stems, "abcd")]
        return FigureSpec(name=name, rows=2, cols=2, panels=panels)

    if name == "fig4":
        panel = PanelSpec(
            title="",
            csv_paths=[_resolve(data_dir, f"fig4_fock{n}") for n in (0, 1, 2)],
            labels=[rf"$|{n}\rangle_b$" for n in (0, 1, 2)],
            xlabel=r"$g_0/\omega_M$",
            ylabel=r"$E_l$",
        )
        return FigureSpec(name=name, rows=1, cols=1, panels=[panel])

    # fig7: entropy vs packet center (a) and vs coupling (b)
    panel_a = PanelSpec(
        title="(a)",
        csv_paths=[_resolve(data_dir, f"fig7a_g0{t}") for t in (4, 8)],
        labels=[r"$g_0=0.4$", r"$g_0=0.8$"],
        xlabel=r"$\Delta_0/\omega_M$",
        ylabel=r"$E_l$",
    )
    panel_b = PanelSpec(
        title="(b)",
        csv_paths=[_resolve(data_dir, f"fig7b_fock{n}") for n in (0, 1, 2)],
        labels=[rf"$|{n}\rangle_b$" for n in (0, 1, 2)],
        xlabel=r"$g_0/\omega_M$",
        ylabel=r"$E_l$",
    )
    return FigureSpec(name=name, rows=1, cols=2, panels=[panel_a, panel_b])
