"""Deterministic result serialization: CSV datasets plus JSON sidecars.

All files are written atomically (temp file in the target directory, then
rename) so a crashed run never leaves a half-written dataset.  Numbers go
out in plain decimal notation with 12 significant digits, which keeps the
output byte-stable across runs and platforms.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Iterable, Mapping, Sequence

import numpy as np


def format_decimal(x: float, sig: int = 12) -> str:
    """Plain decimal (never scientific) with ``sig`` significant digits.

    Integers pass through unchanged.
    """
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, np.floating):
        x = float(x)
    if x == 0:
        return "0." + "0" * (sig - 1)
    if not math.isfinite(x):
        return repr(x)
    exponent = math.floor(math.log10(abs(x)))
    decimals = sig - 1 - exponent
    if decimals <= 0:
        # round to the kept significant digits, print as integer
        scale = 10 ** (-decimals)
        return str(int(round(x / scale) * scale))
    out = f"{x:.{decimals}f}"
    # rounding may carry into one more digit (0.99995 -> 1.000); harmless
    return out


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".quadropt-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _meta_lines(metadata: Mapping) -> list:
    lines = []
    for key, value in metadata.items():
        if isinstance(value, float):
            value = format_decimal(value)
        lines.append(f"# {key} = {value}")
    return lines


def write_csv(
    path: str,
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    metadata: Mapping,
) -> None:
    """CSV with '#'-prefixed metadata lines before the header row."""
    lines = _meta_lines(metadata)
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_decimal(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def write_json(path: str, obj) -> None:
    _atomic_write(
        path, json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    )


def sidecar_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".json"


def read_csv(path: str):
    """Read back a dataset written by write_csv.

    Returns (metadata dict of strings, header list, float ndarray rows).
    """
    metadata = {}
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise ValueError(f"{path}: no header row found")
    return metadata, header, np.asarray(rows, dtype=float)
