"""Deterministic matplotlib rendering of a FigureSpec.

Rendering is a pure function of the input bytes: fixed hash salt, fonts
rendered as paths, and the date metadata stripped, so re-rendering the
same datasets reproduces the output file byte for byte.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from figgen.spec import FigureSpec, FiggenError, load_dataset

_RC = {
    "svg.hashsalt": "figgen",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "axes.prop_cycle": plt.cycler(
        color=["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    ),
}

_LINE_STYLES = ("-", "--", "-.")


def _annotation_positions(meta: dict, lo: float, hi: float):
    """Resonance line positions from sidecar values, delta1 +- n omega_M."""
    try:
        delta1 = float(meta["delta1"])
    except (KeyError, ValueError):
        return []
    # omega_M = 1 in the dataset units; two-phonon lines sit at +-2
    positions = [delta1 + 2 * k for k in (-2, -1, 0, 1, 2)]
    return [x for x in positions if lo <= x <= hi]


def render(spec: FigureSpec, out_path: str) -> None:
    if not out_path.endswith((".svg", ".png")):
        raise FiggenError(f"output '{out_path}' must end in .svg or .png")

    with plt.rc_context(_RC):
        fig, axes = plt.subplots(
            spec.rows,
            spec.cols,
            figsize=(4.0 * spec.cols, 3.0 * spec.rows),
            squeeze=False,
        )
        flat = axes.ravel()
        xranges = []
        for ax, panel in zip(flat, spec.panels):
            for i, (path, label) in enumerate(zip(panel.csv_paths, panel.labels)):
                meta, rows = load_dataset(path)
                ax.plot(
                    rows[:, 0],
                    rows[:, 1],
                    _LINE_STYLES[i % len(_LINE_STYLES)],
                    lw=1.2,
                    label=label or None,
                )
                if panel.annotate and i == 0:
                    lo, hi = float(rows[0, 0]), float(rows[-1, 0])
                    for x in _annotation_positions(meta, lo, hi):
                        ax.axvline(x, color="0.75", lw=0.6, ls=":", zorder=0)
            ax.set_title(panel.title, loc="left", fontsize=10)
            ax.set_xlabel(panel.xlabel)
            ax.set_ylabel(panel.ylabel)
            if any(panel.labels):
                ax.legend(frameon=False, fontsize=8)
            xranges.append(ax.get_xlim())
        for ax in flat[len(spec.panels):]:
            ax.set_visible(False)

        # spectra panels share the x-range within one figure
        if all(p.annotate for p in spec.panels):
            lo = min(r[0] for r in xranges)
            hi = max(r[1] for r in xranges)
            for ax in flat[: len(spec.panels)]:
                ax.set_xlim(lo, hi)

        fig.tight_layout()
        fig.savefig(out_path, metadata={"Date": None})
        plt.close(fig)
