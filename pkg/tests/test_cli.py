import json

import pytest

from grassmann_star.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from grassmann_star.grassmann import GrassmannElement, dumps, from_json_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_text(capsys):
    code, out, _ = run(capsys, "eval", "t1 @ tb1")
    assert code == EXIT_OK
    assert out.strip() == "1.0 + -1.0*tb1 t1"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "--json", "eval", "exp(tb1 t1)")
    data = json.loads(out)
    assert code == EXIT_OK
    assert from_json_dict(data["value"]) == 1 + GrassmannElement.monomial(1, "tb1 t1")


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "star", "t1", "tb1", "--product", "symmetric", "--json")
    value = from_json_dict(json.loads(out)["value"])
    assert code == EXIT_OK
    assert value.scalar_part == 0.5


def test_hbar_zero_is_pointwise(capsys):
    code, out, _ = run(capsys, "--hbar", "0", "star", "t1", "tb1")
    assert code == EXIT_OK
    assert out.strip() == "-1.0*tb1 t1"


def test_super_star(capsys):
    code, out, _ = run(capsys, "star", "z", "zb", "--json")
    assert code == EXIT_OK
    assert "parts" in json.loads(out)["value"]


@pytest.mark.parametrize("argv", [
    ["eval", "tb3"],
    ["eval", "(t1"],
    ["--n", "2", "eval", "z t1"],
    ["check", "nosuch"],
    ["frobnicate"],
    ["--hbar", "-1", "eval", "t1"],
    ["--n", "-1", "eval", "1"],
    ["--product", "symmetric", "oracle-compare"],
    ["oracle-compare", "t1"],
    ["bogoliubov", "--alpha", "[[1,0],[0,1]]"],
    ["bogoliubov", "--alpha", "not json"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "eval", "t1 + $")
    assert "line 1, col 6" in err


@pytest.mark.parametrize("suite", ["fermionic", "susy"])
def test_green_suites(capsys, suite):
    code, out, _ = run(capsys, "--json", "check", suite, "--samples", "10")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["suite"] == suite
    ids = [c["id"] for c in report["checks"]]
    assert ids == sorted(ids)
    assert all({"id", "paper_eq", "residual", "pass"} <= c.keys() for c in report["checks"])


def test_failing_suite_exits_one(capsys):
    code, out, _ = run(capsys, "check", "oscillator")
    assert code == EXIT_FAIL
    assert "FAIL" in out


def test_alias(capsys):
    code_a, out_a, _ = run(capsys, "--json", "check", "fermion-oscillator")
    code_b, out_b, _ = run(capsys, "--json", "check", "oscillator")
    assert (code_a, out_a) == (code_b, out_b)


def test_hbar_zero_fermionic_suite(capsys):
    code, out, _ = run(capsys, "--json", "--hbar", "0", "check", "fermionic", "--samples", "5")
    checks = {c["id"]: c for c in json.loads(out)["checks"]}
    assert code == EXIT_OK
    assert checks["classical-limit"]["residual"] == 0
    assert "oracle" not in checks


def test_oracle_compare_trials(capsys):
    code, out, _ = run(capsys, "--json", "--n", "3", "oracle-compare", "--trials", "20")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["trials"] == 20 and data["max_residual"] < 1e-12


def test_oracle_compare_expressions(capsys):
    code, out, _ = run(capsys, "--json", "oracle-compare", "t1", "tb1")
    assert code == EXIT_OK
    assert json.loads(out)["residual"] == 0


def test_bogoliubov_json(capsys):
    code, out, _ = run(capsys, "--json", "bogoliubov", "--alpha", "[[0, 0.5], [-0.5, 0]]")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["canonical_residual"] < 1e-10
    assert len(data["U"]) == 2


def test_bogoliubov_covariance(capsys, tmp_path):
    path = tmp_path / "element.json"
    path.write_text(dumps(GrassmannElement.monomial(2, "tb1 t1")))
    alpha = "[[0, 0.5], [-0.5, 0]]"
    code, out, _ = run(capsys, "--json", "bogoliubov", "--alpha", alpha, "--check-covariance", str(path),
                       "--product", "symmetric")
    assert code == EXIT_OK
    assert json.loads(out)["covariance_residual"] < 1e-10
    code, out, _ = run(capsys, "--json", "bogoliubov", "--alpha", alpha, "--check-covariance", str(path))
    assert code == EXIT_FAIL
    assert json.loads(out)["covariance_residual"] > 1e-3


def test_bogoliubov_covariance_dimension_mismatch(capsys):
    element = dumps(GrassmannElement.gen(3, "t1"))
    code, _, _ = run(capsys, "bogoliubov", "--alpha", "[[0, 1], [-1, 0]]", "--check-covariance", element)
    assert code == EXIT_USAGE
