import json
import subprocess
import sys

import pytest

from hqcf import cli


def run(argv, capsys):
    code = cli.main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_generate_q2(capsys):
    code, rep = run(["generate", "--s", "1", "--t", "1", "--ell", "1", "--lambdas", "1", "--eps", "1", "1", "--n", "10"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["quotients"] == [[0, 1]] * 10
    assert res["periodicity"] == [0, 1]
    assert res["equation_text"] == "X^3 + T*X^2 + X"


def test_generate_f4(capsys):
    code, rep = run(["generate", "--s", "2", "--t", "1", "--ell", "1", "--lambdas", "1", "--eps", "2", "2", "--n", "6"], capsys)
    assert code == 0
    assert rep["result"]["lambdas"] == [1, 3, 1, 3, 1, 3]


def test_generate_rejects_zero_lambda(capsys):
    code = cli.main(["generate", "--s", "2", "--lambdas", "0", "--eps", "1", "1"])
    assert code == cli.EXIT_USAGE
    assert "unit" in capsys.readouterr().err


def test_ell_mismatch(capsys):
    assert cli.main(["generate", "--ell", "2", "--lambdas", "1"]) == cli.EXIT_USAGE


def test_verify_q2(capsys):
    code, rep = run(["verify", "--s", "1", "--t", "1", "--lambdas", "1", "--n", "50"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["certified"] == res["matched"] == 50
    assert res["status"] == "match"


def test_verify_f4_200(capsys):
    code, rep = run(["verify", "--s", "2", "--t", "1", "--lambdas", "1", "--eps", "2", "2", "--n", "200"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["matched"] == 200 and not res["mismatches"]
    assert res["residuals_strictly_decreasing_from_5"]
    assert res["root_residual"]["zero_at_precision"]


def test_verify_precision_exhausted(capsys):
    code, rep = run(["verify", "--s", "2", "--t", "2", "--lambdas", "1", "--eps", "2", "3", "--n", "500", "--prec", "30"], capsys)
    assert code == cli.EXIT_PRECISION
    assert rep["result"]["status"] == "precision_exhausted"
    assert rep["result"]["certified"] < 500


def test_suite_default_passes(capsys):
    code, rep = run(["suite", "--trials", "50"], capsys)
    assert code == 0
    assert rep["result"]["passed"]
    assert set(rep["result"]["suites"]) >= {"lemma1_closed_form", "lemma1_identity", "lemma2"}


def test_suite_self_test_fail(capsys):
    code, rep = run(["suite", "--trials", "5", "--self-test-fail"], capsys)
    assert code == cli.EXIT_MISMATCH
    lem = rep["result"]["suites"]["lemma1_closed_form"]
    assert not lem["passed"]
    assert [c for c in lem["cases"] if not c["passed"]] == [{"p": 2, "t": 1, "r": 2, "passed": False}]


def test_analyze_r2(capsys):
    code, rep = run(["analyze", "--s", "2", "--t", "1", "--lambdas", "1", "--eps", "2", "2"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["r2_closed_form"]["passed"]
    assert res["relation_search"]["found"]
    assert res["relation_search"]["label"] == "proved case"


def test_analyze_r4_label(capsys):
    code, rep = run(["analyze", "--s", "2", "--t", "2", "--lambdas", "3", "1", "--eps", "2", "3", "--depth", "6"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["relation_search"]["label"] == "conjecture evidence"
    assert "r2_closed_form" not in res
    assert res["kernel"]["label"].startswith("evidence")


def test_analyze_q2_kernel(capsys):
    code, rep = run(["analyze", "--s", "1", "--t", "2", "--lambdas", "1"], capsys)
    assert rep["result"]["kernel"]["classes"] == 1


def test_report_schema_and_echo(capsys):
    code, rep = run(["generate", "--s", "3", "--t", "2", "--lambdas", "1", "5", "--eps", "3", "6", "--n", "8", "--seed", "4"], capsys)
    assert rep["schema"] == 1 and rep["command"] == "generate"
    assert rep["exit_status"] == code
    cfg = rep["config"]
    assert cfg["s"] == 3 and cfg["lambdas"] == [1, 5] and cfg["seed"] == 4


def test_text_format_and_out(tmp_path):
    out = tmp_path / "r.txt"
    assert cli.main(["generate", "--n", "5", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("hqcf generate")
    assert text.rstrip().endswith("exit status: 0")


@pytest.mark.parametrize("command", ["generate", "verify", "analyze"])
def test_deterministic(command, tmp_path):
    argv = [command, "--s", "2", "--t", "1", "--lambdas", "3", "--eps", "1", "2", "--n", "40", "--depth", "6"]
    a, b = tmp_path / "a", tmp_path / "b"
    cli.main(argv + ["--out", str(a)])
    cli.main(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_suite_seed_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    cli.main(["suite", "--trials", "1000", "--seed", "42", "--format", "json", "--out", str(a)])
    cli.main(["suite", "--trials", "1000", "--seed", "42", "--format", "json", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hqcf", "generate", "--n", "4", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["lambdas"] == [1, 1, 1, 1]


def test_bad_command():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
