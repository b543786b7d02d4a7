import json
import subprocess
import sys

import pytest

from lattice_speedup.cli import main, parse_range, UsageError


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_range_forms():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("2,5,7") == [2, 5, 7]
    with pytest.raises(UsageError):
        parse_range("4..1")
    with pytest.raises(UsageError):
        parse_range("x..y")


def test_tables_single_cell_verifies(capsys):
    code, out, err = run_cli(
        ["tables", "--D", "1", "--K", "1", "--restarts", "4", "--verify"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "D,K,T_1"
    assert lines[1].startswith("1,1,1.86793")


def test_tables_malformed_range_usage_error(capsys):
    code, _, err = run_cli(["tables", "--D", "nope", "--K", "1"], capsys)
    assert code == 2
    assert "malformed" in err


def test_bounds_quarter_constants(capsys):
    code, out, _ = run_cli(["bounds", "--alpha", "0.25", "--D", "1..3"], capsys)
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0].split(",")[-2:] == ["r_inf", "c_alpha"]
    first = rows[1].split(",")
    assert first[-1] == "0.664554"
    assert first[-2] == "0.278279"


def test_coeff_two_squares(capsys):
    code, out, _ = run_cli(["coeff", "--profile", "0,0,2", "--W", "2"], capsys)
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert row[0] == "2" and row[1] == "3"
    assert row[-1] == "True"


def test_smc_disjoint_singletons(tmp_path, capsys):
    path = tmp_path / "inst.json"
    path.write_text('{"n": 2, "D": 1, "sets": [[1], [2]]}')
    code, out, _ = run_cli(["smc", str(path)], capsys)
    assert code == 0
    assert json.loads(out) == {"k": 2}


def test_smc_infeasible(tmp_path, capsys):
    path = tmp_path / "inst.json"
    path.write_text('{"n": 2, "D": 1, "sets": [[1]]}')
    for solver in ("dp", "pairs", "brute"):
        code, out, _ = run_cli(["smc", str(path), "--solver", solver], capsys)
        assert code == 0
        assert json.loads(out) == {"infeasible": True}


def test_simulate_hand_value(capsys):
    code, out, _ = run_cli(
        ["simulate", "--profile", "0,2", "--K", "1", "--alpha", "0.317317"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["total"] == pytest.approx(2.8284271247, rel=1e-9)
    assert payload["weights"] == [0, 1]


def test_simulate_requires_schedule(capsys):
    code, _, err = run_cli(["simulate", "--profile", "0,0,0,0,0,0,0,1", "--K", "1"], capsys)
    assert code == 2


def test_appendix_blocks_verify(capsys):
    code, out, _ = run_cli(["appendix", "--D", "1..5", "--verify"], capsys)
    assert code == 0
    # the stored D=6 block carries a low-precision middle exponent: its
    # tight value differs in the fourth decimal, so strict verification
    # reports it
    code6, out6, err6 = run_cli(["appendix", "--D", "6", "--verify"], capsys)
    assert code6 == 1
    assert "T_5" in err6


def test_outputs_deterministic_and_sidecar_written(tmp_path, capsys):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    for out in (out_a, out_b):
        code, _, _ = run_cli(
            [
                "tables",
                "--D",
                "1",
                "--K",
                "1",
                "--restarts",
                "3",
                "--seed",
                "7",
                "--out",
                str(out),
            ],
            capsys,
        )
        assert code == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    sidecar = json.loads((tmp_path / "a.csv.json").read_text())
    assert sidecar[0]["D"] == 1
    assert "alpha" in sidecar[0] and "x" in sidecar[0]


def test_threads_do_not_change_results(capsys):
    _, out1, _ = run_cli(
        ["tables", "--D", "1", "--K", "1", "--restarts", "4", "--threads", "1"],
        capsys,
    )
    _, out4, _ = run_cli(
        ["tables", "--D", "1", "--K", "1", "--restarts", "4", "--threads", "4"],
        capsys,
    )
    assert out1 == out4


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lattice_speedup.cli", "bounds", "--alpha", "0.25", "--D", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0.664554" in proc.stdout


def test_env_seed_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LATTICE_SPEEDUP_SEED", "123")
    code, out, _ = run_cli(["tables", "--D", "1", "--K", "1", "--restarts", "2"], capsys)
    assert code == 0
