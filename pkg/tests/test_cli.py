"""End-to-end checks of the command-line front end."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from oagkit.cli import main

REPO = Path(__file__).resolve().parent.parent
QSQRT2 = str(REPO / "corpus" / "structures" / "qsqrt2.struct")
QN16 = str(REPO / "corpus" / "structures" / "qn16.struct")

# Known to exhaust a 50-node budget but finish under the default one.
HARD = "A a E b A c E d (a < b & b < c + d | c < a + b & d < a | a = c & b != d)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_decide_exit_codes(capsys):
    code, out, _ = run(capsys, "decide", "E x (0 < x & x < 1)")
    assert code == 0 and out.strip() == "verdict: true"
    code, out, _ = run(capsys, "decide", "E x (x < x)")
    assert code == 1 and out.strip() == "verdict: false"
    code, out, err = run(capsys, "decide", "E x (x <")
    assert code == 2 and out == "" and err.startswith("error:")


def test_decide_json_shape(capsys):
    code, rep, _ = run_json(capsys, "decide", "E x (x = 2)", "--seed", "12")
    assert code == 0
    assert rep["check"] == "decide"
    assert rep["verdict"] is True
    assert rep["structure"] == "Q"
    assert rep["seed"] == 12
    assert rep["timing_ms"] is None


def test_json_is_byte_deterministic():
    argv = [
        sys.executable, "-m", "oagkit.cli",
        "dci", "C(v) | v < w", "--var", "v",
        "--structure", QSQRT2, "--format", "json",
    ]
    a = subprocess.run(argv, capture_output=True, cwd=REPO)
    b = subprocess.run(argv, capture_output=True, cwd=REPO)
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout
    rep = json.loads(a.stdout)
    assert rep["timing_ms"] is None
    # sort_keys means re-serialising round-trips exactly
    assert a.stdout.decode().strip() == json.dumps(rep, sort_keys=True, indent=2)


def test_timings_flag_reports_a_number(capsys):
    code, rep, _ = run_json(capsys, "dci", "v < 5", "--var", "v", "--timings")
    assert code == 0
    assert isinstance(rep["timing_ms"], float) and rep["timing_ms"] >= 0


def test_dci_counterexample_output(capsys):
    code, out, _ = run(
        capsys, "dci", "C(v) | v < w", "--var", "v", "--structure", QSQRT2
    )
    assert code == 1
    assert "verdict: false" in out
    assert "counterexample: w = " in out
    code, rep, _ = run_json(
        capsys, "dci", "C(v)", "--var", "v", "--structure", QSQRT2
    )
    assert code == 1 and rep["witness"] == {}


def test_bci_happy_and_degenerate(capsys):
    code, out, _ = run(
        capsys, "bci", "v < 2", "--var", "v", "--from", "0", "--to", "1"
    )
    assert code == 0 and "verdict: true" in out
    code, _, err = run(
        capsys, "bci", "v < 2", "--var", "v", "--from", "1", "--to", "1"
    )
    assert code == 2 and err.startswith("error:")


def test_gap_reports_both_directions(capsys):
    code, rep, _ = run_json(capsys, "gap", "C(x)", "--structure", QSQRT2)
    assert code == 0
    assert rep["verdict"] == "gap"
    assert rep["witness"] is None
    assert rep["lub_sentence_true"] is False
    assert rep["components"] == "(-inf,sqrt(2))"
    code, rep, _ = run_json(capsys, "gap", "x < 3")
    assert code == 1
    assert rep["verdict"] == "proper_cut_with_lub"
    assert rep["witness"] == "3"
    assert rep["lub_sentence_true"] is True


def test_audit_command(capsys):
    code, out, _ = run(
        capsys, "audit",
        "--family", "a - 1/4 < x & x < a + 1/4",
        "--param", "a", "--point", "x",
        "--from", "0", "--to", "1",
    )
    assert code == 0 and "verdict: true" in out
    code, rep, _ = run_json(
        capsys, "audit",
        "--family", "x = 0 | x = t",
        "--param", "t", "--point", "x",
        "--role", "exhaustion",
    )
    assert code == 1 and rep["directed"] is False


def test_subcover_command(capsys):
    code, rep, _ = run_json(
        capsys, "subcover",
        "--family", "a - 1/4 < x & x < a + 1/4",
        "--param", "a", "--point", "x",
        "--from", "0", "--to", "1",
    )
    assert code == 0
    assert rep["verdict"] is True
    assert 1 <= len(rep["params"]) <= 3
    assert rep["steps"] == len(rep["params"])
    code, rep, _ = run_json(
        capsys, "subcover",
        "--family", "x = a",
        "--param", "a", "--point", "x",
        "--from", "0", "--to", "1",
    )
    assert code == 1 and rep["audit_failed"] is True


def test_compact_command(capsys):
    base = [
        "compact",
        "--family", "D(4*a) & a - 3/8 < x & x < a + 3/8",
        "--param", "a", "--point", "x",
        "--exh-param", "t", "--exh-point", "x",
        "--from", "0", "--to", "1",
        "--structure", QN16,
    ]
    code, rep, _ = run_json(capsys, *base, "--exhaustion", "D(4*x)")
    assert code == 0 and rep["verdict"] is True and rep["witness"] is not None
    code, rep, _ = run_json(capsys, *base, "--exhaustion", "x = 0")
    assert code == 1 and rep["verdict"] is False and rep["witness"] is None
    code, rep, _ = run_json(capsys, *base, "--exhaustion", "x = t")
    assert code == 1 and rep["audit_failed"] is True


def test_ucont_command(capsys):
    code, rep, _ = run_json(
        capsys, "ucont",
        "(x < 1/2 & y = 2*x) | (x >= 1/2 & y = 2 - 2*x)",
        "--from", "0", "--to", "1",
    )
    assert code == 0
    assert rep["continuous"] and rep["uniformly_continuous"] and rep["verdict"]
    code, rep, _ = run_json(
        capsys, "ucont",
        "(x < 1/2 & y = 0) | (x >= 1/2 & y = 1)",
        "--from", "0", "--to", "1",
    )
    assert code == 0  # the implication holds vacuously
    assert not rep["continuous"] and not rep["uniformly_continuous"]


def test_caps_must_be_positive(capsys):
    code, _, err = run(capsys, "decide", "E x (x = 0)", "--max-nodes", "0")
    assert code == 2 and "positive" in err
    code, _, err = run(capsys, "decide", "E x (x = 0)", "--max-steps", "-3")
    assert code == 2 and "positive" in err


def corpus_file(d, name, header, body):
    (d / name).write_text(header + "\n" + body + "\n")


def test_corpus_exit_codes(tmp_path, capsys):
    ok = tmp_path / "ok"
    ok.mkdir()
    corpus_file(ok, "a.fml", "# check=decide expect=true", "E x (x = 1)")
    corpus_file(ok, "b.fml", "# check=decide expect=false", "E x (x < x)")
    code, out, _ = run(capsys, "corpus", str(ok))
    assert code == 0
    assert "2 passed, 0 failed, 0 errors, 0 resource-limited" in out

    bad = tmp_path / "bad"
    bad.mkdir()
    corpus_file(bad, "a.fml", "# check=decide expect=false", "E x (x = 1)")
    code, out, _ = run(capsys, "corpus", str(bad))
    assert code == 1 and "FAIL a.fml" in out

    err_dir = tmp_path / "err"
    err_dir.mkdir()
    corpus_file(err_dir, "a.fml", "# check=decide expect=true", "E x (x <")
    code, out, _ = run(capsys, "corpus", str(err_dir))
    assert code == 2 and "ERROR a.fml" in out

    hard = tmp_path / "hard"
    hard.mkdir()
    corpus_file(hard, "a.fml", "# check=decide expect=true", HARD)
    code, out, _ = run(capsys, "corpus", str(hard), "--max-nodes", "50")
    assert code == 3 and "1 resource-limited" in out


def test_corpus_rejects_empty_and_missing_dirs(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, _, err = run(capsys, "corpus", str(empty))
    assert code == 2 and "no .fml files" in err
    code, _, err = run(capsys, "corpus", str(tmp_path / "nope"))
    assert code == 2 and "not a directory" in err


def test_corpus_json_report(tmp_path, capsys):
    d = tmp_path / "c"
    d.mkdir()
    corpus_file(d, "a.fml", "# check=decide expect=true", "E x (x = 1)")
    code, rep, _ = run_json(capsys, "corpus", str(d))
    assert code == 0
    assert rep["check"] == "corpus"
    assert rep["passed"] == 1 and rep["failed"] == 0
    assert rep["files"][0]["name"] == "a.fml"
    assert rep["files"][0]["status"] == "pass"


def test_log_env_writes_progress_to_stderr():
    env = dict(os.environ, OAG_LOG="1")
    r = subprocess.run(
        [sys.executable, "-m", "oagkit.cli", "decide", "E x (x = 0)"],
        capture_output=True, cwd=REPO, env=env, text=True,
    )
    assert r.returncode == 0
    assert "oagkit:" in r.stderr
    # and silent without the variable
    env.pop("OAG_LOG")
    r = subprocess.run(
        [sys.executable, "-m", "oagkit.cli", "decide", "E x (x = 0)"],
        capture_output=True, cwd=REPO, env=env, text=True,
    )
    assert r.returncode == 0 and r.stderr == ""
