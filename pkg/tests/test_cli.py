"""Command line behavior: output bytes, exit codes, formats, env overrides."""

import json
import subprocess
import sys

import pytest

from powsum import cli, eval_sum, parse_report


def run_cli(args, capsys):
    """Invoke main() in-process; normalize SystemExit into a return code."""
    try:
        code = cli.main(args)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_prints_bare_decimal(capsys):
    code, out, err = run_cli(["eval", "-n", "3", "-m", "4", "-k", "7"], capsys)
    assert code == 0
    assert out == "2\n"


def test_eval_matches_library_byte_for_byte(capsys):
    cases = [
        (10**18, 10**19 + 7, 720720),
        (123456789, 55, 64),
        (1, 0, 97),
    ]
    for n, m, k in cases:
        code, out, _ = run_cli(["eval", "-n", str(n), "-m", str(m), "-k", str(k)], capsys)
        assert code == 0
        assert out == f"{eval_sum(n, m, k)}\n"


def test_eval_explain_breakdown(capsys):
    code, out, _ = run_cli(
        ["eval", "-n", "2", "-m", str(10**18), "-k", "9", "--explain"], capsys
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "3^2 period=27 window=1 residue=1"
    assert lines[-1] == "1"


def test_period_output(capsys):
    code, out, _ = run_cli(["period", "-n", "2", "-k", "12"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "combined 72",
        "2^2 period=8 branch: n = 1 or n even",
        "3^1 period=9 branch: q - 1 divides n",
    ]


def test_congruence_output(capsys):
    code, out, _ = run_cli(["congruence", "-n", "2", "-q", "3", "-a", "2"], capsys)
    assert code == 0
    assert out.splitlines() == ["PhiCase 6", "valuation >= 1"]
    # (q-1) does not divide n here, so the bound is nu_q(n) + a = 1 + 2
    code, out, _ = run_cli(["congruence", "-n", "3", "-q", "3", "-a", "2"], capsys)
    assert out.splitlines() == ["ZeroCase 0", "valuation >= 3"]
    # 1296 mod 8 and S_1(2) = 3 mod 2
    code, out, _ = run_cli(["congruence", "-n", "3", "-q", "2", "-a", "3"], capsys)
    assert out.splitlines()[0] == "ZeroCase 0"
    code, out, _ = run_cli(["congruence", "-n", "1", "-q", "2", "-a", "1"], capsys)
    assert out.splitlines()[0] == "PhiCase 1"


def test_table_examples(capsys):
    code, out, _ = run_cli(["table", "-n", "1..1", "-m", "1..6", "-k", "3"], capsys)
    assert code == 0 and out == "1 0 0 1 0 0\n"
    code, out, _ = run_cli(
        ["table", "-n", "3..3", "-m", "1..6", "-k", "9", "--mark-period"], capsys
    )
    assert code == 0 and out == "1 0 0 | 1 0 0 |\n"
    code, out, _ = run_cli(["table", "-n", "1..1", "-m", "1..1", "-k", "1"], capsys)
    assert code == 0 and out == "0\n"


def test_table_multiple_rows_and_csv(capsys):
    code, out, _ = run_cli(["table", "-n", "1..2", "-m", "0..4", "-k", "5"], capsys)
    assert code == 0
    assert out.splitlines() == ["0 1 3 1 0", "0 1 0 4 0"]
    code, out, _ = run_cli(
        ["table", "-n", "1..2", "-m", "0..4", "-k", "5", "--format", "csv"], capsys
    )
    assert out.splitlines() == ["n,0,1,2,3,4", "1,0,1,3,1,0", "2,0,1,0,4,0"]


def test_table_starts_anywhere(capsys):
    # anchor at a huge m; values must match eval at each cell
    lo = 10**18
    code, out, _ = run_cli(
        ["table", "-n", "2..2", "-m", f"{lo}..{lo + 3}", "-k", "7"], capsys
    )
    want = " ".join(str(eval_sum(2, m, 7)) for m in range(lo, lo + 4))
    assert code == 0 and out == want + "\n"


def test_table_width_budget(capsys):
    code, _, err = run_cli(
        ["table", "-n", "1..1", "-m", "0..9", "-k", "5", "--oracle-limit", "5"], capsys
    )
    assert code == 2
    assert "budget" in err


def test_usage_errors_exit_2(capsys):
    for argv in (
        ["eval", "-n", "0", "-m", "4", "-k", "7"],
        ["eval", "-n", "2", "-m", "4", "-k", "0"],
        ["eval", "-n", "2", "-m", "xyz", "-k", "7"],
        ["eval", "-n", "2", "-m", "4", "-k", str(2**64)],
        ["congruence", "-n", "2", "-q", "6", "-a", "1"],
        ["table", "-n", "5..3", "-m", "1..2", "-k", "7"],
    ):
        code, _, err = run_cli(argv, capsys)
        assert code == 2, argv
        assert err, argv


def test_verify_json_round_trips(capsys):
    code, out, _ = run_cli(
        ["verify", "--suite", "lemma", "--q", "3", "--n-max", "20",
         "--format", "json"], capsys
    )
    assert code == 0
    rep = parse_report(out)
    assert rep.ok
    assert rep.grid["suite"] == "lemma"


def test_verify_text_summary(capsys):
    code, out, _ = run_cli(
        ["verify", "--suite", "periods", "--k-max", "12", "--n-max", "6"], capsys
    )
    assert code == 0
    assert "T3.2:" in out and "LCM:" in out and "0 fail" in out


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["verify", "--suite", "power", "--q", "3", "--n-max", "9",
         "--format", "json", "--out", str(path)], capsys
    )
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_bytes())
    assert doc["summary"]["C2.5"]["fail"] == 0


def test_verify_exit_1_on_failures(monkeypatch, capsys):
    from powsum.verify import VerificationRecord, VerificationReport

    bad = VerificationReport(
        records=[
            VerificationRecord("T3.2", {"k": "9", "n": "3"}, "fail", "3", "9",
                               counterexample={"k": "9", "n": "3"})
        ],
        grid={},
        summary={"T3.2": {"pass": 0, "fail": 1}},
        wall_time_ms=1,
    )
    monkeypatch.setattr(cli.verify, "check_period_formulas",
                        lambda *a, **kw: bad)
    code, out, _ = run_cli(["verify", "--suite", "periods"], capsys)
    assert code == 1
    assert "FAIL T3.2" in out


def test_budget_env_and_flag(monkeypatch, capsys):
    # tiny env budget makes the periods suite error out as a usage failure
    monkeypatch.setenv(cli.BUDGET_ENV, "3")
    code, _, err = run_cli(["verify", "--suite", "periods", "--k-max", "8"], capsys)
    assert code == 2
    assert "budget" in err
    # explicit flag wins over the environment
    code, _, _ = run_cli(
        ["verify", "--suite", "periods", "--k-max", "8", "--n-max", "4",
         "--budget", "100000"], capsys
    )
    assert code == 0
    monkeypatch.setenv(cli.BUDGET_ENV, "not-a-number")
    code, _, err = run_cli(["verify", "--suite", "periods", "--k-max", "4"], capsys)
    assert code == 2
    assert cli.BUDGET_ENV in err


def test_installed_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "powsum.cli", "eval", "-n", "5", "-m", "10", "-k", "11"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == f"{eval_sum(5, 10, 11)}\n"
