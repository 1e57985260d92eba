"""CLI contract: flags, exit codes, output formats, determinism."""

import json
import subprocess
import sys

import pytest

from fockcalc.cli import main, parse_complex, parse_orders, RunConfig, run_suite


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# flag parsing
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,value",
    [
        ("0.5", 0.5 + 0j),
        ("1", 1 + 0j),
        ("-2.5e-1", -0.25 + 0j),
        ("0.5+0.25i", 0.5 + 0.25j),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("0.3i", 0.3j),
        ("-0.3i", -0.3j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_garbage():
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex("zebra")


def test_parse_orders():
    assert parse_orders("16,32,64") == (16, 32, 64)
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        parse_orders("32,16")


def test_runconfig_validation():
    with pytest.raises(ValueError):
        RunConfig(alpha=-1.0)
    with pytest.raises(ValueError):
        RunConfig(orders=(32, 16))


# ---------------------------------------------------------------------------
# check subcommand
# ---------------------------------------------------------------------------


def test_check_selfadjoint_forward_passes(capsys):
    code, out, _ = run_cli(["check", "selfadjoint-forward", "--c", "1", "--a0", "0.5", "--a1", "0.25"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "Pass"
    assert doc["check"] == "selfadjoint-forward"
    assert all(r["value"] <= 1e-12 for r in doc["residuals"] if r["N"] > 0)


def test_check_normality_trivial_branch(capsys):
    code, out, _ = run_cli(["check", "normality", "--a", "0.5", "--b", "0"], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] == "Pass"


def test_check_counterexample(capsys):
    code, out, _ = run_cli(["check", "counterexample", "--eta", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "Pass"


def test_check_failure_exit_code(capsys):
    code, out, _ = run_cli(["check", "selfadjoint-forward", "--c", "1+0.2i"], capsys)
    assert code == 1
    assert json.loads(out)["verdict"] == "Fail"


def test_check_unknown_name_usage_error(capsys):
    code = main(["check", "not-a-checker"])
    assert code == 2


def test_check_missing_required_flag(capsys):
    code, _, err = run_cli(["check", "commutant-symbols"], capsys)
    assert code == 2
    assert "--eta" in err


def test_check_degenerate_parameters_usage_error(capsys):
    code, _, err = run_cli(["check", "commutant-symbols", "--eta", "2.25", "--b", "0.666666666666666666"], capsys)
    # |b|^2 eta == 1 raises a parameter error, mapped to exit 2
    assert code == 2
    assert "eta" in err or "close to 1" in err


def test_check_text_format(capsys):
    code, out, _ = run_cli(["check", "fixed-point", "--a0", "0.5", "--a1", "0.25", "--format", "text"], capsys)
    assert code == 0
    assert out.startswith("[Pass] fixed-point")


def test_check_csv_format(capsys):
    code, out, _ = run_cli(["check", "fixed-point", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "check,N,residual,verdict"


def test_tolerance_override_can_force_failure(capsys):
    code, out, _ = run_cli(
        ["check", "moebius-conjugation", "--eta", "2", "--b", "0.5", "--tolerance", "moebius-conjugation=1e-30"],
        capsys,
    )
    assert code == 1


# ---------------------------------------------------------------------------
# matrix subcommand
# ---------------------------------------------------------------------------


def test_matrix_identity_csv(capsys):
    code, out, err = run_cli(["matrix", "--order", "3", "--map-a", "1", "--map-b", "0"], capsys)
    assert code == 0
    rows = out.strip().split("\n")
    assert len(rows) == 4
    assert rows[0].split(",")[0] == "1"
    assert err == ""


def test_matrix_hermitian_dump(capsys):
    code, out, _ = run_cli(
        ["matrix", "--order", "8", "--weight-c", "1", "--weight-w", "0.5", "--map-a", "0.25", "--map-b", "0.5"],
        capsys,
    )
    assert code == 0
    import numpy as np

    rows = [[float(x) for x in line.split(",")] for line in out.strip().split("\n")]
    arr = np.array(rows)
    mat = arr[:, 0::2] + 1j * arr[:, 1::2]
    assert np.max(np.abs(mat - mat.conj().T)) <= 1e-12


def test_matrix_unbounded_warns_but_emits(capsys):
    code, out, err = run_cli(["matrix", "--order", "2", "--map-a", "1", "--map-b", "0.1"], capsys)
    assert code == 0
    assert "Unbounded" in err
    assert len(out.strip().split("\n")) == 3


# ---------------------------------------------------------------------------
# suite and oracle
# ---------------------------------------------------------------------------


def test_suite_all_pass_and_deterministic(capsys):
    code1, out1, _ = run_cli(["suite", "--orders", "16,32"], capsys)
    code2, out2, _ = run_cli(["suite", "--orders", "16,32"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["all_passed"] is True
    names = [c["check"] for c in doc["checks"]]
    assert names == sorted(names)


def test_suite_single_order(capsys):
    code, out, _ = run_cli(["suite", "--orders", "16"], capsys)
    assert code == 0
    assert json.loads(out)["all_passed"] is True


def test_suite_alpha_two(capsys):
    code, out, _ = run_cli(["suite", "--orders", "16,32", "--alpha", "2"], capsys)
    assert code == 0
    assert json.loads(out)["all_passed"] is True


def test_seed_changes_samples_but_not_verdicts(capsys):
    code1, out1, _ = run_cli(["suite", "--orders", "16", "--seed", "1"], capsys)
    code2, out2, _ = run_cli(["suite", "--orders", "16", "--seed", "2"], capsys)
    assert code1 == code2 == 0
    assert out1 != out2  # residuals differ with the sample draw


def test_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("FOCKCALC_SEED", "7")
    _, out_env, _ = run_cli(["suite", "--orders", "16"], capsys)
    monkeypatch.delenv("FOCKCALC_SEED")
    _, out_flag, _ = run_cli(["suite", "--orders", "16", "--seed", "7"], capsys)
    assert out_env == out_flag


def test_oracle_subcommand(capsys):
    code, out, _ = run_cli(["oracle", "--max-degree", "6", "--alphas", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["check"] == "oracle-agreement"
    assert doc["verdict"] == "Pass"


def test_entry_point_subprocess_determinism():
    cmd = [sys.executable, "-m", "fockcalc.cli", "suite", "--orders", "16"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_run_suite_programmatic():
    reports = run_suite(RunConfig(orders=(16,)))
    assert all(r.passed for r in reports)
    assert len(reports) >= 20
