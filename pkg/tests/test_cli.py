"""Command-line interface: exit codes, output shape, determinism."""

import json

import pytest

from kitaev_defects.cli import main
from tests.conftest import MODELS


def model(fname):
    return str(MODELS / fname)


def test_validate_exit_codes(capsys):
    assert main(["validate", model("toric_code_2x2.json")]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out

    assert main(["validate", model("bad_antipode.json")]) == 1
    out = capsys.readouterr().out
    assert "FAIL  hopf[kZ2_bad].antipode_left" in out

    assert main(["validate", model("side_mismatch.json")]) == 1
    out = capsys.readouterr().out
    assert "does not match the Hopf algebra" in out


def test_check_toric_code(capsys):
    assert main(["check", model("toric_code_2x2.json")]) == 0
    out = capsys.readouterr().out
    assert "state space dimension: 256" in out
    assert "operator suite: 80 checks, 0 failures" in out


def test_check_defect_loop(capsys):
    assert main(["check", model("defect_loop_2x2.json")]) == 0
    out = capsys.readouterr().out
    assert "state space dimension: 64" in out
    assert "operator suite: 80 checks, 0 failures" in out


def test_check_nonregular_warns(capsys):
    assert main(["check", model("nonregular_1x1.json")]) == 0
    out = capsys.readouterr().out
    assert "SKIPPED (warning): non-regular cell decomposition" in out


def test_check_stops_on_dirty_validation(capsys):
    assert main(["check", model("bad_antipode.json")]) == 1
    captured = capsys.readouterr()
    assert "FAIL" in captured.out
    assert "validation failed" in captured.err


def test_ground_dim_values(capsys):
    cases = [
        ("toric_code_2x2.json", 4),
        ("tetrahedron_sphere.json", 1),
        ("defect_loop_2x2.json", 2),
        ("nonregular_1x1.json", 4),
    ]
    for fname, expected in cases:
        assert main(["ground-dim", model(fname)]) == 0
        out = capsys.readouterr().out
        assert f"ground-state dimension: {expected}" in out


def test_ground_dim_method_trace_only(capsys):
    assert main(["ground-dim", model("toric_code_2x2.json"), "--method", "trace"]) == 0
    out = capsys.readouterr().out
    assert "method: trace (trace=4)" in out
    assert "kernel" not in out


def test_ground_dim_method_both(capsys):
    assert main(["ground-dim", model("toric_code_2x2.json"), "--method", "both"]) == 0
    out = capsys.readouterr().out
    assert "trace=4" in out and "kernel=4" in out


def test_ground_dim_refuses_dirty_document(capsys):
    assert main(["ground-dim", model("bad_antipode.json")]) == 1
    err = capsys.readouterr().err
    assert "validation failed" in err


def test_ground_dim_force_on_side_mismatch_hits_math_violation(capsys):
    code = main(["ground-dim", model("side_mismatch.json"), "--force"])
    assert code == 1
    err = capsys.readouterr().err
    assert "math violation" in err


def test_input_error_exit_codes(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    assert "input error" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert main(["validate", str(bad)]) == 2
    assert "input error" in capsys.readouterr().err


def test_guard_precedence(tmp_path, capsys, monkeypatch):
    toric = model("toric_code_2x2.json")
    # CLI flag guards the 256-dimensional space
    assert main(["check", toric, "--max-dim", "10"]) == 2
    err = capsys.readouterr().err
    assert "exceeds guard 10" in err
    # environment variable
    monkeypatch.setenv("KITAEV_MAX_DIM", "12")
    assert main(["check", toric]) == 2
    err = capsys.readouterr().err
    assert "exceeds guard 12" in err
    # CLI flag beats the environment
    assert main(["check", toric, "--max-dim", "300"]) == 0
    capsys.readouterr()
    monkeypatch.delenv("KITAEV_MAX_DIM")


def test_report_is_deterministic_and_complete(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["report", model("defect_loop_2x2.json"), "--out", str(out1)]) == 0
    assert main(["report", model("defect_loop_2x2.json"), "--out", str(out2)]) == 0
    capsys.readouterr()
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    payload = json.loads(b1)
    assert set(payload) == {
        "document",
        "ground_dimension",
        "operators",
        "seed",
        "state_space_dimension",
        "validation",
    }
    assert payload["state_space_dimension"] == 64
    assert payload["ground_dimension"]["dimension"] == 2
    assert payload["validation"]["ok"] is True
    assert payload["operators"]["ok"] is True


def test_report_on_invalid_document(tmp_path, capsys):
    out = tmp_path / "bad_report.json"
    assert main(["report", model("bad_antipode.json"), "--out", str(out)]) == 1
    capsys.readouterr()
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["validation"]["ok"] is False
    assert payload["operators"] is None
    assert payload["ground_dimension"] is None


def test_check_seed_flag_runs(capsys):
    assert main(["check", model("tetrahedron_sphere.json"), "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "operator suite: 72 checks, 0 failures" in out
