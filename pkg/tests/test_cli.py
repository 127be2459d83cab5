"""Command line behavior: subcommands, exit codes, files and env."""

import json

import numpy as np
import pytest

from gcl import GaussianChannel, attenuator, thermal_state
from gcl.cli import main
from gcl.io import (
    channel_from_json,
    channel_to_json,
    dilation_from_json,
    state_to_json,
)


def _channel_file(tmp_path, ch, name="channel.json"):
    path = tmp_path / name
    path.write_text(channel_to_json(ch), encoding="utf-8")
    return str(path)


def test_validate_good_channel(tmp_path, capsys):
    path = _channel_file(tmp_path, attenuator(0.7))
    assert main(["validate", path]) == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["ok"] is True
    assert report["channel_class"] == "i"
    assert (report["k"], report["r"], report["r_prime"]) == (2, 2, 2)


def test_validate_non_cp_channel_fails(tmp_path, capsys):
    bad = GaussianChannel(1, 1, np.sqrt(0.5) * np.eye(2), np.zeros((2, 2)))
    path = _channel_file(tmp_path, bad)
    assert main(["validate", path]) == 1
    report = json.loads(capsys.readouterr().out.strip())
    assert report["ok"] is False
    assert report["min_eig"] < 0


def test_validate_state_mode(tmp_path, capsys):
    st = thermal_state([0.0, 1.0])
    path = tmp_path / "state.json"
    path.write_text(state_to_json(st), encoding="utf-8")
    assert main(["validate", "--state", str(path)]) == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["ok"] is True
    assert report["pure"] is False


def test_validate_reads_stdin(monkeypatch, capsys):
    import io as stdio
    monkeypatch.setattr("sys.stdin", stdio.StringIO(channel_to_json(attenuator(0.5))))
    assert main(["validate", "-"]) == 0
    assert json.loads(capsys.readouterr().out.strip())["ok"] is True


def test_validate_reports_parse_errors(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", str(path)]) == 1
    report = json.loads(capsys.readouterr().out.strip())
    assert report["ok"] is False
    assert "line 1" in report["error"]


def test_dilate_to_file(tmp_path, capsys):
    src = _channel_file(tmp_path, attenuator(0.7, occupation=0.4))
    out = tmp_path / "dilation.json"
    assert main(["dilate", src, "--flavor", "case_i", "--out", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out.strip())
    assert summary["ell"] == 1
    assert summary["pure"] is False
    assert summary["residual"] <= 1e-8
    d = dilation_from_json(out.read_text(encoding="utf-8"))
    assert d.n == 1 and d.ell == 1


def test_dilate_to_stdout(tmp_path, capsys):
    src = _channel_file(tmp_path, attenuator(0.7))
    assert main(["dilate", src, "--flavor", "reduced_mixed"]) == 0
    cap = capsys.readouterr()
    d = dilation_from_json(cap.out)
    assert d.ell == 1
    summary = json.loads(cap.err.strip())
    assert summary["residual"] <= 1e-8


def test_dilate_flavor_counts(tmp_path, capsys):
    src = _channel_file(tmp_path, attenuator(0.7, occupation=1.0))
    for flavor, ell in (("pure", 2), ("reduced_pure", 2), ("reduced_mixed", 1)):
        out = tmp_path / f"{flavor}.json"
        assert main(["dilate", src, "--flavor", flavor, "--out", str(out)]) == 0
        assert json.loads(capsys.readouterr().out.strip())["ell"] == ell


def test_dilate_rejects_unfit_channel(tmp_path, capsys):
    # rank-deficient noise form cannot use the full-rank flavor
    ch = GaussianChannel(1, 1, np.eye(2), np.eye(2))
    src = _channel_file(tmp_path, ch)
    assert main(["dilate", src, "--flavor", "case_i"]) == 1
    assert "rank deficient" in capsys.readouterr().err


def test_classify_two_mode(capsys):
    assert main(["classify", "--two-mode", "B", "--a", "2", "--N", "0.05"]) == 0
    doc = json.loads(capsys.readouterr().out.strip())
    assert doc["kind"] == "WD"
    np.testing.assert_allclose(doc["threshold"], 0.030330085889910596,
                               atol=1e-12)
    assert main(["classify", "--two-mode", "A1", "--a", "0.4", "--b", "0.2"]) == 0
    doc = json.loads(capsys.readouterr().out.strip())
    assert doc["kind"] == "AD"
    assert doc["threshold"] is None


def test_classify_channel_file(tmp_path, capsys):
    src = _channel_file(tmp_path, attenuator(0.8))
    assert main(["classify", src]) == 0
    doc = json.loads(capsys.readouterr().out.strip())
    assert doc["kind"] == "WD"


def test_classify_requires_input(capsys):
    assert main(["classify"]) == 1
    assert "error:" in capsys.readouterr().err


def test_classify_rejects_negative_N(capsys):
    assert main(["classify", "--two-mode", "A2", "--a", "1", "--N", "-1"]) == 1
    assert "nonnegative" in capsys.readouterr().err


def test_sweep_fig2_stdout(capsys):
    assert main(["sweep", "fig2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "b,n2,bound,bound1"
    assert len(lines) == 61  # header + 60 grid points
    row = dict(zip(lines[0].split(","), map(float, lines[20].split(","))))
    np.testing.assert_allclose(row["b"], 1.0, atol=1e-12)
    np.testing.assert_allclose(row["bound"], 1.5155644370746373, atol=1e-9)
    np.testing.assert_allclose(row["bound1"], 0.4560661587986472, atol=1e-9)


def test_sweep_fig1_writes_csv_and_png(tmp_path):
    out = tmp_path / "fig1.csv"
    assert main(["sweep", "fig1", "--out", str(out)]) == 0
    assert out.exists()
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "curve,x,value"
    assert (tmp_path / "fig1.png").exists()


def test_sweep_no_plot(tmp_path):
    out = tmp_path / "fig1.csv"
    assert main(["sweep", "fig1", "--out", str(out), "--no-plot"]) == 0
    assert out.exists()
    assert not (tmp_path / "fig1.png").exists()


def test_sweep_fig3_single_cell(tmp_path):
    out = tmp_path / "fig3.csv"
    assert main(["sweep", "fig3", "--xs", "2.0", "--zs", "0",
                 "--out", str(out), "--no-plot"]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,z_plus,r"
    vals = lines[1].split(",")
    np.testing.assert_allclose(float(vals[2]), 0.0, atol=1e-12)


def test_sweep_fig3_rejects_empty_grid(capsys):
    assert main(["sweep", "fig3", "--xs", ",", "--zs", "0"]) == 1
    assert "empty grid" in capsys.readouterr().err


def test_sweep_table_small(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["sweep", "table", "--draws", "5", "--seed", "1",
                 "--out", str(out), "--no-plot"]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "first,second,draws,in_set,ok"
    assert len(lines) == 17  # header + 16 cells


def test_compose_classes(capsys):
    assert main(["compose", "--first", "B,1", "--second", "B,-1"]) == 0
    doc = json.loads(capsys.readouterr().out.strip())
    assert doc["allowed"] == ["A2", "B"]
    assert doc["concrete"]["kind"] == "A2"
    np.testing.assert_allclose(doc["concrete"]["a"], -1.0, atol=1e-12)


def test_compose_channel_files(tmp_path, capsys):
    a = _channel_file(tmp_path, attenuator(0.8), "a.json")
    b = _channel_file(tmp_path, attenuator(0.5), "b.json")
    assert main(["compose", a, b]) == 0
    ch = channel_from_json(capsys.readouterr().out)
    np.testing.assert_allclose(ch.X, np.sqrt(0.4) * np.eye(2), atol=1e-12)
    np.testing.assert_allclose(ch.Y, 0.6 * np.eye(2), atol=1e-12)


def test_compose_argument_errors(capsys):
    assert main(["compose", "--first", "B,1"]) == 1
    assert "both" in capsys.readouterr().err
    assert main(["compose"]) == 1
    assert "two channel files" in capsys.readouterr().err
    assert main(["compose", "--first", "B", "--second", "B,1"]) == 1
    assert "KIND,a" in capsys.readouterr().err


def test_config_env_honored(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"seed": 7, "tol_psd": 1e-6}), encoding="utf-8")
    monkeypatch.setenv("GCL_CONFIG", str(cfg))
    assert main(["classify", "--two-mode", "A2", "--a", "2"]) == 0
    assert json.loads(capsys.readouterr().out.strip())["kind"] == "WD"


def test_config_env_bad_file(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"seed": 7, "bogus": 1}), encoding="utf-8")
    monkeypatch.setenv("GCL_CONFIG", str(cfg))
    assert main(["classify", "--two-mode", "A2", "--a", "2"]) == 1
    assert "bad GCL_CONFIG" in capsys.readouterr().err


def test_config_output_path_default(tmp_path, monkeypatch):
    out = tmp_path / "fig1.csv"
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"output_path": str(out)}), encoding="utf-8")
    monkeypatch.setenv("GCL_CONFIG", str(cfg))
    assert main(["sweep", "fig1", "--no-plot"]) == 0
    assert out.exists()


def test_tol_must_be_positive(capsys):
    assert main(["validate", "x.json", "--tol", "0"]) == 1
    assert "--tol" in capsys.readouterr().err


def test_unknown_subcommand_exits():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
