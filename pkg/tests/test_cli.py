"""Command line interface: exit codes and output schema."""

import json

import pytest

from eismeasure.cli import run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kummer_success(capsys):
    code, out, _ = run(capsys, "kummer", "--p", "5", "--k", "4",
                       "--k2", "24", "--m", "1", "--bound", "30")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True and data["modulus_exponent"] == 2


def test_kummer_bad_hypothesis_is_usage_error(capsys):
    code, _, err = run(capsys, "kummer", "--p", "5", "--k", "4", "--k2", "5")
    assert code == 2
    assert "congruent" in err


def test_integrate_emits_sorted_terms(capsys):
    code, out, _ = run(capsys, "integrate", "--mode", "symplectic",
                       "--p", "5", "--n", "1", "--ring", "qq",
                       "--cusp", "divisor", "--bound", "6",
                       "--function", "x^3")
    assert code == 0
    data = json.loads(out)
    assert data["cusp"] == "divisor" and data["n"] == 1
    traces = [t["beta"][0][0][0] for t in data["terms"]]
    assert traces == sorted(traces)
    by_trace = {t["beta"][0][0][0]: t["coeff"] for t in data["terms"]}
    assert by_trace[6] == "42"
    assert by_trace[5] == "0"


def test_moment_command(capsys):
    code, out, _ = run(capsys, "moment", "--mode", "symplectic", "--p", "5",
                       "--n", "1", "--ring", "qq", "--cusp", "divisor",
                       "--bound", "6", "--function", "x^3",
                       "--det-power", "1")
    assert code == 0
    data = json.loads(out)
    by_trace = {t["beta"][0][0][0]: t["coeff"] for t in data["terms"]}
    assert by_trace[6] == "252"
    assert data["weight"] == [3, -1]


def test_qexp_with_monomial_expression(capsys):
    code, out, _ = run(capsys, "qexp", "--mode", "symplectic", "--p", "5",
                       "--n", "1", "--ring", "qq", "--cusp", "divisor",
                       "--bound", "6", "--k", "4",
                       "--function", "x^4*ydet^-3")
    assert code == 0
    data = json.loads(out)
    by_trace = {t["beta"][0][0][0]: t["coeff"] for t in data["terms"]}
    assert by_trace[6] == str(1 + 8 + 27 + 216)


def test_bad_function_expression_is_usage_error(capsys):
    code, _, err = run(capsys, "qexp", "--mode", "symplectic", "--p", "5",
                       "--n", "1", "--k", "4", "--function", "det+nonsense")
    assert code == 2 and "cannot parse" in err


def test_automorphy_selftest_command(capsys):
    code, out, _ = run(capsys, "automorphy-selftest", "--n", "1",
                       "--cases", "50", "--seed", "2")
    assert code == 0
    data = json.loads(out)
    assert max(data["residuals"].values()) < data["tolerance"]


def test_decompose_command(tmp_path, capsys):
    import random

    from eismeasure.fields import FieldData
    from eismeasure.functions import random_lc_function

    fld = FieldData(p=5, k_disc=-4)
    f = random_lc_function(fld, 1, 1, random.Random(1), entries=4)
    table = tmp_path / "table.json"
    table.write_text(json.dumps(f.to_json()))
    code, out, _ = run(capsys, "decompose", "--table", str(table),
                       "--p", "5", "--k-disc", "-4")
    assert code == 0
    data = json.loads(out)
    assert data["level"] == 1 and len(data["components"]) >= 1


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "kummer", "--p", "5", "--k", "4", "--k2", "8",
                       "--m", "0", "--bound", "20", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["passed"] is True


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run_command([])
    assert exc.value.code == 2
