"""Command-line entry point.

One invocation runs one mode, writes a CSV dataset plus a JSON sidecar
(or a single JSON document with --format json), and exits 0.  Bad
configuration exits 1; numerical-tolerance failures exit 2.  Both error
paths print a machine-readable JSON record to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional, Tuple

import numpy as np

import quadropt
from quadropt.config import (
    DEFAULT_GRID,
    FIGURES,
    MODES,
    RunConfig,
    load_config,
    parse_grid,
    parse_sweep,
)
from quadropt.emission import (
    emission_reduced_density,
    emission_spectrum,
    resonance_lines,
)
from quadropt.errors import (
    ConfigError,
    ParameterDomainError,
    QuadroptError,
    StepSizeError,
    ToleranceError,
    TruncationError,
)
from quadropt.io_utils import sidecar_path, write_csv, write_json
from quadropt.kernels import BACKEND
from quadropt.params import SystemParams, derive_dressed, sideband_regime
from quadropt.scattering import (
    WavePacket,
    resonant_drive,
    scattering_entropy_profile,
    scattering_reduced_density,
    scattering_spectrum,
)
from quadropt.states import initial_state, linear_entropy

_CONFIG_EXITS = (ConfigError, ParameterDomainError)
_TOLERANCE_EXITS = (ToleranceError, TruncationError, StepSizeError)


def _apply_thread_cap():
    cap = os.environ.get("QUADROPT_THREADS")
    if not cap:
        return None
    try:
        n = int(cap)
        if n < 1:
            raise ValueError
    except ValueError:
        raise ConfigError(f"QUADROPT_THREADS={cap!r} is not a positive integer")
    try:
        from threadpoolctl import threadpool_limits

        return threadpool_limits(limits=n)
    except ImportError:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(n)
        return None


def _params(cfg: RunConfig) -> SystemParams:
    return SystemParams(
        g0=cfg.g0,
        gamma_c=cfg.gamma_c,
        n_fock=cfg.n_fock,
        n_squeezed=cfg.n_squeezed,
    )


def _grid_array(cfg: RunConfig) -> np.ndarray:
    lo, hi, pts = cfg.grid
    return np.linspace(lo, hi, pts)


def _base_metadata(cfg: RunConfig, params: SystemParams) -> dict:
    dressed = derive_dressed(params)
    return {
        "mode": cfg.mode,
        "g0": params.g0,
        "gamma_c": params.gamma_c,
        "initial": cfg.initial,
        "omega_m1": dressed.omega_m1,
        "delta1": dressed.delta1,
        "eta1": dressed.eta1,
        "sideband_regime": sideband_regime(params),
    }


def _default_delta0(cfg: RunConfig, params: SystemParams) -> float:
    if cfg.delta0 is not None:
        return cfg.delta0
    dressed = derive_dressed(params)
    kind, _, arg = cfg.initial.partition(":")
    if kind == "fock":
        return resonant_drive(int(arg), dressed)
    return dressed.delta1


def _run_emit_spectrum(cfg: RunConfig):
    params = _params(cfg)
    state = initial_state(cfg.initial, params)
    spec = emission_spectrum(state, params, _grid_array(cfg))
    meta = _base_metadata(cfg, params)
    meta.update(
        {
            "norm": spec.norm,
            "tail_correction": spec.tail_correction,
            "total": spec.total(),
            "initial_trace_deficit": state.trace_deficit,
        }
    )
    extra = {"coverage_warnings": spec.metadata.get("coverage_warnings", [])}
    rows = list(zip(spec.grid.tolist(), spec.values.tolist()))
    return ["delta_k", "s_value"], rows, meta, extra


def _run_scatter_spectrum(cfg: RunConfig):
    params = _params(cfg)
    state = initial_state(cfg.initial, params)
    packet = WavePacket(delta0=_default_delta0(cfg, params), epsilon=cfg.epsilon)
    spec = scattering_spectrum(state, packet, params, _grid_array(cfg))
    meta = _base_metadata(cfg, params)
    meta.update(
        {
            "delta0": packet.delta0,
            "epsilon": packet.epsilon,
            "norm": spec.norm,
            "tail_correction": spec.tail_correction,
            "total": spec.total(),
            "initial_trace_deficit": state.trace_deficit,
        }
    )
    extra = {"coverage_warnings": spec.metadata.get("coverage_warnings", [])}
    rows = list(zip(spec.grid.tolist(), spec.values.tolist()))
    return ["delta_k", "s_value"], rows, meta, extra


def _sweep_values(cfg: RunConfig) -> np.ndarray:
    _, lo, hi, pts = cfg.sweep
    return np.linspace(lo, hi, pts)


def _require_pure_initial(cfg: RunConfig) -> None:
    state = initial_state(cfg.initial, _params(cfg))
    if not state.is_pure(tol=1e-8):
        raise ConfigError(
            f"entropy sweeps need a pure initial state; '{cfg.initial}' is mixed "
            f"and its linear entropy would not measure entanglement"
        )


def _run_emit_entropy_sweep(cfg: RunConfig):
    _require_pure_initial(cfg)
    values = _sweep_values(cfg)
    entropies = []
    for g0 in values:
        params = SystemParams(
            g0=float(g0),
            gamma_c=cfg.gamma_c,
            n_fock=cfg.n_fock,
            n_squeezed=cfg.n_squeezed,
        )
        state = initial_state(cfg.initial, params)
        entropies.append(linear_entropy(emission_reduced_density(state, params)))
    meta = _base_metadata(cfg, _params(cfg))
    meta["sweep"] = ":".join(str(v) for v in cfg.sweep)
    rows = list(zip(values.tolist(), entropies))
    return ["sweep_value", "entropy"], rows, meta, {}


def _run_scatter_entropy_sweep(cfg: RunConfig):
    _require_pure_initial(cfg)
    var = cfg.sweep[0]
    values = _sweep_values(cfg)
    if var == "delta0":
        params = _params(cfg)
        state = initial_state(cfg.initial, params)
        entropies = scattering_entropy_profile(
            state, params, values, cfg.epsilon
        ).tolist()
    else:  # g0 sweep; packet tracks the matched resonance unless pinned
        entropies = []
        for g0 in values:
            params = SystemParams(
                g0=float(g0),
                gamma_c=cfg.gamma_c,
                n_fock=cfg.n_fock,
                n_squeezed=cfg.n_squeezed,
            )
            state = initial_state(cfg.initial, params)
            packet = WavePacket(
                delta0=_default_delta0(cfg, params), epsilon=cfg.epsilon
            )
            rho = scattering_reduced_density(state, packet, params)
            entropies.append(linear_entropy(rho))
    meta = _base_metadata(cfg, _params(cfg))
    meta["epsilon"] = cfg.epsilon
    if cfg.delta0 is not None:
        meta["delta0"] = cfg.delta0
    meta["sweep"] = ":".join(str(v) for v in cfg.sweep)
    rows = list(zip(values.tolist(), entropies))
    return ["sweep_value", "entropy"], rows, meta, {}


def _run_resonances(cfg: RunConfig):
    params = _params(cfg)
    state = initial_state(cfg.initial, params)
    lines = resonance_lines(state, params)
    meta = _base_metadata(cfg, params)
    rows = [(ln.position, ln.weight, ln.n, ln.m) for ln in lines]
    extra = {"transition_labels": [ln.transition_label for ln in lines]}
    return ["position", "weight", "n_index", "m_index"], rows, meta, extra


def _run_oracle_check(cfg: RunConfig, out_path: str) -> int:
    from quadropt.oracle import (
        ContinuumGrid,
        compare_report,
        emission_initial,
        integrate_amplitudes,
        scattering_initial,
    )

    params = _params(cfg)
    kind, _, arg = cfg.initial.partition(":")
    if kind != "fock":
        raise ConfigError("oracle-check supports fock:N initial states only")
    n0 = int(arg)
    grid = ContinuumGrid()
    t_final = 20.0 / params.gamma_c
    t0 = time.perf_counter()
    if cfg.epsilon is not None:
        packet = WavePacket(delta0=_default_delta0(cfg, params), epsilon=cfg.epsilon)
        init = scattering_initial(n0, packet, params, grid)
        closed = scattering_spectrum(
            initial_state(cfg.initial, params), packet, params, grid.deltas()
        )
    else:
        init = emission_initial(n0, params, grid)
        closed = emission_spectrum(
            initial_state(cfg.initial, params), params, grid.deltas()
        )
    out = integrate_amplitudes(init, params, grid, t_final)
    report = compare_report(closed, out, grid)
    payload = {
        "config": cfg.to_dict(),
        "metadata": {
            **_base_metadata(cfg, params),
            "t_final": t_final,
            "span": grid.span,
            "spacing": grid.spacing,
            "backend": BACKEND,
            "wall_time_s": time.perf_counter() - t0,
            "version": quadropt.__version__,
        },
        "discrepancy": report.to_dict(),
    }
    write_json(out_path, payload)
    status = "pass" if report.passed else "FAIL"
    print(f"oracle-check: {status} (L_inf {report.linf_rel:.4g} vs "
          f"{report.tolerance:.4g}) -> {out_path}")
    if not report.passed:
        raise ToleranceError(
            f"oracle discrepancy {report.linf_rel:.4g} exceeds "
            f"{report.tolerance:.4g} (see {out_path})"
        )
    return 0


_RUNNERS = {
    "emit-spectrum": _run_emit_spectrum,
    "scatter-spectrum": _run_scatter_spectrum,
    "emit-entropy-sweep": _run_emit_entropy_sweep,
    "scatter-entropy-sweep": _run_scatter_entropy_sweep,
    "resonances": _run_resonances,
}


def _write_outputs(cfg: RunConfig, out_path: str, header, rows, meta, extra, wall):
    sidecar = {
        "config": cfg.to_dict(),
        "metadata": {
            **meta,
            **extra,
            "backend": BACKEND,
            "rows": len(rows),
            "wall_time_s": wall,
            "version": quadropt.__version__,
        },
    }
    if cfg.format == "json":
        payload = dict(sidecar)
        payload["data"] = {"header": list(header), "rows": [list(r) for r in rows]}
        write_json(out_path, payload)
    else:
        write_csv(out_path, header, rows, meta)
        write_json(sidecar_path(out_path), sidecar)


def run(cfg: RunConfig) -> int:
    """Execute one validated RunConfig; returns the exit code on success."""
    if cfg.mode == "figure":
        from quadropt.figures import figure_presets

        out_dir = cfg.out or "."
        os.makedirs(out_dir, exist_ok=True)
        for panel, panel_cfg in figure_presets(cfg.figure):
            panel_cfg.format = cfg.format
            ext = "json" if cfg.format == "json" else "csv"
            path = os.path.join(out_dir, f"{panel}.{ext}")
            t0 = time.perf_counter()
            header, rows, meta, extra = _RUNNERS[panel_cfg.mode](panel_cfg)
            meta["panel"] = panel
            _write_outputs(
                panel_cfg, path, header, rows, meta, extra,
                time.perf_counter() - t0,
            )
            print(f"{panel}: {len(rows)} rows -> {path}")
        return 0

    ext = "json" if cfg.format == "json" else "csv"
    out_path = cfg.out or f"quadropt-{cfg.mode}.{ext}"
    if cfg.mode == "oracle-check":
        return _run_oracle_check(cfg, cfg.out or "quadropt-oracle-check.json")

    t0 = time.perf_counter()
    header, rows, meta, extra = _RUNNERS[cfg.mode](cfg)
    _write_outputs(cfg, out_path, header, rows, meta, extra, time.perf_counter() - t0)
    print(f"{cfg.mode}: {len(rows)} rows -> {out_path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadropt",
        description=(
            "Exact single-photon emission/scattering spectra and photon-"
            "phonon entanglement for a quadratically coupled optomechanical "
            "cavity."
        ),
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", help="JSON config file (sidecars accepted)")
    parser.add_argument("--g0", type=float, help="coupling strength (units of omega_M)")
    parser.add_argument("--gamma-c", type=float, dest="gamma_c", help="cavity decay rate")
    parser.add_argument(
        "--initial", help="initial membrane state: fock:N | coherent:B | thermal:NBAR"
    )
    parser.add_argument("--delta0", type=float, help="packet center (scatter modes)")
    parser.add_argument("--epsilon", type=float, help="packet width (scatter modes)")
    parser.add_argument("--grid", help="spectral grid MIN:MAX:POINTS")
    parser.add_argument("--sweep", help="sweep spec VAR:MIN:MAX:POINTS")
    parser.add_argument("--figure", choices=FIGURES, help="figure preset name")
    parser.add_argument("--out", help="output path (directory for figure mode)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        cfg = load_config(args.config)
        cfg.mode = args.mode
    else:
        cfg = RunConfig(mode=args.mode)
    if args.g0 is not None:
        cfg.g0 = args.g0
    if args.gamma_c is not None:
        cfg.gamma_c = args.gamma_c
    if args.initial is not None:
        cfg.initial = args.initial
    if args.delta0 is not None:
        cfg.delta0 = args.delta0
    if args.epsilon is not None:
        cfg.epsilon = args.epsilon
    if args.grid is not None:
        cfg.grid = parse_grid(args.grid)
    if args.sweep is not None:
        cfg.sweep = parse_sweep(args.sweep)
    if args.figure is not None:
        cfg.figure = args.figure
    if args.out is not None:
        cfg.out = args.out
    if args.format is not None:
        cfg.format = args.format
    return cfg.validate()


def _fail(kind: str, exc: Exception, code: int) -> int:
    record = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(record), file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        # the returned limiter object must stay alive for the whole run
        _limiter = _apply_thread_cap()
        cfg = _config_from_args(args)
        return run(cfg)
    except _CONFIG_EXITS as exc:
        return _fail("config", exc, 1)
    except _TOLERANCE_EXITS as exc:
        return _fail("tolerance", exc, 2)
    except QuadroptError as exc:  # any other library failure
        return _fail("runtime", exc, 2)


if __name__ == "__main__":
    sys.exit(main())
