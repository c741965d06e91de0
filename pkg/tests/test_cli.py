import json
import os

import numpy as np
import pytest

from quadropt.cli import main
from quadropt.io_utils import read_csv

SMALL_GRID = "-2:2:41"


def run_cli(args):
    return main(args)


def test_emit_spectrum_writes_csv_and_sidecar(tmp_path):
    out = str(tmp_path / "emit.csv")
    code = run_cli(
        ["emit-spectrum", "--g0", "0.6", "--gamma-c", "0.2",
         f"--grid={SMALL_GRID}", "--out", out]
    )
    assert code == 0
    meta, header, arr = read_csv(out)
    assert header == ["delta_k", "s_value"]
    assert arr.shape == (41, 2)
    assert meta["mode"] == "emit-spectrum"
    assert float(meta["omega_m1"]) == pytest.approx(1.8439089, abs=1e-6)
    side = json.loads(open(str(tmp_path / "emit.json")).read())
    assert side["config"]["g0"] == 0.6
    assert side["metadata"]["rows"] == 41


def test_output_bytes_are_deterministic(tmp_path):
    args = ["emit-spectrum", "--g0", "0.3", f"--grid={SMALL_GRID}"]
    out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert run_cli(args + ["--out", out1]) == 0
    assert run_cli(args + ["--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_sidecar_reproduces_run(tmp_path):
    out = str(tmp_path / "first.csv")
    assert run_cli(
        ["scatter-spectrum", "--g0", "0.8", "--epsilon", "1.2",
         f"--grid={SMALL_GRID}", "--out", out]
    ) == 0
    redo = str(tmp_path / "redo.csv")
    assert run_cli(
        ["scatter-spectrum", "--config", str(tmp_path / "first.json"),
         "--out", redo]
    ) == 0
    assert open(out, "rb").read() == open(redo, "rb").read()


def test_json_format_single_document(tmp_path):
    out = str(tmp_path / "run.json")
    assert run_cli(
        ["emit-spectrum", f"--grid={SMALL_GRID}", "--format", "json", "--out", out]
    ) == 0
    doc = json.loads(open(out).read())
    assert doc["data"]["header"] == ["delta_k", "s_value"]
    assert len(doc["data"]["rows"]) == 41
    assert not os.path.exists(str(tmp_path / "run.csv"))


@pytest.mark.parametrize(
    "args",
    [
        ["emit-spectrum", "--g0", "-0.5"],
        ["scatter-spectrum", "--g0", "0.5"],  # epsilon missing
        ["emit-entropy-sweep", "--sweep", "delta0:0:1:5"],
        ["emit-spectrum", "--initial", "squeezed:2"],
        ["emit-spectrum", "--grid", "5:1:10"],
    ],
)
def test_config_errors_exit_1(args, tmp_path, capsys):
    assert run_cli(args + ["--out", str(tmp_path / "x.csv")]) == 1
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"]["kind"] == "config"


def test_bad_thread_cap_exits_1(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("QUADROPT_THREADS", "abc")
    assert run_cli(
        ["emit-spectrum", f"--grid={SMALL_GRID}", "--out", str(tmp_path / "x.csv")]
    ) == 1
    assert "QUADROPT_THREADS" in capsys.readouterr().err


def test_thread_cap_accepted(tmp_path, monkeypatch):
    monkeypatch.setenv("QUADROPT_THREADS", "1")
    assert run_cli(
        ["emit-spectrum", f"--grid={SMALL_GRID}", "--out", str(tmp_path / "x.csv")]
    ) == 0


def test_truncation_failure_exits_2(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "mode": "emit-spectrum", "initial": "coherent:6",
        "n_fock": 20, "n_squeezed": 14,
    }))
    code = run_cli(
        ["emit-spectrum", "--config", str(cfg), f"--grid={SMALL_GRID}",
         "--out", str(tmp_path / "x.csv")]
    )
    assert code == 2
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"]["kind"] == "tolerance"


def test_mixed_state_entropy_sweep_rejected(tmp_path, capsys):
    code = run_cli(
        ["emit-entropy-sweep", "--initial", "thermal:1",
         "--sweep", "g0:0:0.4:3", "--out", str(tmp_path / "x.csv")]
    )
    assert code == 1
    assert "pure" in capsys.readouterr().err


def test_entropy_sweep_output(tmp_path):
    out = str(tmp_path / "sweep.csv")
    assert run_cli(
        ["emit-entropy-sweep", "--sweep", "g0:0:0.4:3", "--out", out]
    ) == 0
    _, header, arr = read_csv(out)
    assert header == ["sweep_value", "entropy"]
    assert np.allclose(arr[:, 0], [0.0, 0.2, 0.4])
    assert arr[0, 1] == pytest.approx(0.0, abs=1e-9)
    assert np.all(np.diff(arr[:, 1]) >= 0)


def test_resonances_mode_integer_columns(tmp_path):
    out = str(tmp_path / "res.csv")
    assert run_cli(
        ["resonances", "--g0", "0.6", "--initial", "fock:1", "--out", out]
    ) == 0
    meta, header, arr = read_csv(out)
    assert header == ["position", "weight", "n_index", "m_index"]
    with open(out) as fh:
        body = [ln for ln in fh if not ln.startswith("#")]
    # index columns serialize as bare integers
    assert body[1].strip().split(",")[2].isdigit()
    assert arr.shape[1] == 4 and arr.shape[0] > 3


def test_figure_mode_writes_panels(tmp_path):
    out_dir = str(tmp_path / "figs")
    assert run_cli(["figure", "--figure", "fig2", "--out", out_dir]) == 0
    files = sorted(os.listdir(out_dir))
    assert files == [
        "fig2a.csv", "fig2a.json", "fig2b.csv", "fig2b.json",
        "fig2c.csv", "fig2c.json", "fig2d.csv", "fig2d.json",
    ]
    meta, _, _ = read_csv(os.path.join(out_dir, "fig2c.csv"))
    assert meta["g0"] == "0.600000000000"
    assert meta["panel"] == "fig2c"


def test_oracle_check_quick(tmp_path, capsys):
    out = str(tmp_path / "oracle.json")
    code = run_cli(
        ["oracle-check", "--g0", "0.2", "--gamma-c", "0.4", "--out", out]
    )
    assert code == 0
    doc = json.loads(open(out).read())
    assert doc["discrepancy"]["passed"] is True
    assert doc["discrepancy"]["linf_rel"] < 0.02
    assert "pass" in capsys.readouterr().out
