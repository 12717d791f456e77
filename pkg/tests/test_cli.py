import csv
import io
import json

import pytest

from zsl.cli import EXIT_BUDGET, EXIT_ERROR, EXIT_FALSIFIED, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_check_free(capsys):
    code, rep = run_json(capsys, "check", "metacyclic:n=8,s=3", "(y^1)^[7] * x")
    assert code == EXIT_OK
    assert rep["product_one_free"] is True
    assert rep["length"] == 8 and rep["witness"] is None


def test_check_not_free(capsys):
    code, rep = run_json(capsys, "check", "metacyclic:n=8,s=3", "x * x")
    assert code == EXIT_FALSIFIED
    assert rep["witness"] == "x,x"
    code, rep = run_json(capsys, "check", "cyclic:m=5", "(y)^[5]")
    assert code == EXIT_FALSIFIED


def test_check_small_example_golden(capsys):
    code, out, _ = run(capsys, "check", "metacyclic:n=8,s=3", "x * y", "--format", "table")
    assert code == EXIT_OK
    assert out == (
        "group             metacyclic:n=8,s=3\n"
        "sequence          y^1 * x\n"
        "length            2\n"
        "product_one_free  True\n"
        "subproducts_size  4\n"
        'pi                ["x*y^1", "x*y^3"]\n'
        "witness           None\n"
    )


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "metacyclic:n=8,s=3", "z^2"),
        ("check", "metacyclic:n=8,s=2", "y"),
        ("check", "metacyclic:n=40,s=19", "y"),
        ("check", "dihedral:8", "y"),
        ("check", "cyclic:m=5", "x"),
        ("classify", "metacyclic:n=8,s=7", "(y)^[7] * x"),
        ("classify", "metacyclic:n=8,s=3", "(y)^[3]"),
        ("factor", "8", "7"),
        ("lemma1-audit", "--m-min", "5", "--m-max", "3"),
        ("lemma1-audit", "--m-min", "13", "--m-max", "13"),
        ("check", "metacyclic:n=8,s=3", "y", "--workers", "0"),
        ("check", "metacyclic:n=8,s=3", "y", "--state-budget", "10"),
        ("bogus",),
        (),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_ERROR
    assert out == ""


def test_parse_error_names_token(capsys):
    code, _, err = run(capsys, "check", "metacyclic:n=8,s=3", "y * z^2")
    assert code == EXIT_ERROR
    assert "z^2" in err


def test_budget_exhausted_exit_3(capsys):
    seq = "(y)^[7] * (x)^[4] * (x*y)^[3] * (x*y^2)^[3]"
    code, rep = run_json(capsys, "check", "metacyclic:n=8,s=3", seq, "--state-budget", "10000")
    assert code == EXIT_BUDGET
    assert rep["complete"] is False
    assert rep["needed_states"] == 8 * 5 * 4 * 4 * 16


def test_env_budget_overrides_flag(capsys, monkeypatch):
    monkeypatch.setenv("ZSL_STATE_BUDGET", "10000")
    seq = "(y)^[7] * (x)^[4] * (x*y)^[3] * (x*y^2)^[3]"
    code, rep = run_json(capsys, "check", "metacyclic:n=8,s=3", seq, "--state-budget", "100000000")
    assert code == EXIT_BUDGET and rep["state_budget"] == 10000


def test_classify(capsys):
    code, rep = run_json(capsys, "classify", "metacyclic:n=8,s=5", "(x*y)^[7] * x*y^2")
    assert code == EXIT_OK
    assert rep["pattern"] == {"kind": "IIxx", "u": 1, "v": 2}
    assert rep["consistent"] is True
    code, rep = run_json(capsys, "classify", "metacyclic:n=8,s=3", "(x*y)^[7] * x*y^2")
    assert code == EXIT_OK
    assert rep["pattern"] is None and rep["product_one_free"] is False


def test_davenport(capsys, tmp_path):
    fig = tmp_path / "profile.png"
    code, rep = run_json(capsys, "davenport", "metacyclic:n=8,s=5", "--max-len", "9", "--figure", str(fig))
    assert code == EXIT_OK
    assert rep["d"] == 8 and rep["expected"] == 8 and rep["exhaustive"]
    assert fig.stat().st_size > 0
    code, rep = run_json(capsys, "davenport", "cyclic:m=6")
    assert code == EXIT_OK and rep["d"] == 5


def test_davenport_incomplete_exit_3(capsys):
    code, rep = run_json(capsys, "davenport", "metacyclic:n=16,s=9", "--time-budget-ms", "50")
    assert code == EXIT_BUDGET
    assert rep["complete"] is False


def test_davenport_csv_rows(capsys):
    code, out, _ = run(capsys, "davenport", "metacyclic:n=8,s=3", "--max-len", "9", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert [int(r["length"]) for r in rows] == list(range(10))
    assert rows[8]["count"] == "32" and rows[9]["count"] == "0"


def test_verify_theorem_deterministic_without_stats(capsys, tmp_path):
    argv = ("verify-theorem", "metacyclic:n=8,s=5", "--no-stats", "--seed", "3")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["ok"] and rep["enumerated_count"] == 64
    assert "stats" not in rep


def test_verify_theorem_csv_and_figure(capsys, tmp_path):
    fig = tmp_path / "vt.png"
    out_path = tmp_path / "vt.csv"
    code, out, _ = run(
        capsys, "verify-theorem", "metacyclic:n=8,s=3", "--format", "csv", "--figure", str(fig), "-o", str(out_path),
    )
    assert code == EXIT_OK and out == ""
    rows = list(csv.DictReader(out_path.open()))
    assert len(rows) == 32 and {r["kind"] for r in rows} == {"I"}
    assert fig.stat().st_size > 0


def test_verify_theorem_partial(capsys):
    code, rep = run_json(capsys, "verify-theorem", "metacyclic:n=16,s=9", "--time-budget-ms", "200")
    assert code == EXIT_BUDGET
    assert rep["complete"] is False and "coverage" in rep


def test_families(capsys):
    code, rep = run_json(capsys, "families", "metacyclic:n=8,s=5")
    assert code == EXIT_OK
    assert rep["checked"] == 64 and rep["failures"] == []
    assert all(g["generates_group"] for g in rep["generator_change"])
    code, rep = run_json(capsys, "families", "metacyclic:n=12,s=5")
    assert rep["generator_change"] == []


def test_factor(capsys):
    code, rep = run_json(capsys, "factor", "15", "4")
    assert code == EXIT_OK
    assert (rep["n1"], rep["n2"], rep["case"]) == (5, 3, "A")
    assert rep["projection_bijective"] and rep["problems"] == []


def test_lemma1_audit(capsys, tmp_path):
    fig = tmp_path / "audit.png"
    code, rep = run_json(capsys, "lemma1-audit", "--m-min", "3", "--m-max", "8", "--figure", str(fig))
    assert code == EXIT_OK
    assert rep["falsifications"] == [] and rep["mode"] == "exhaustive"
    assert fig.stat().st_size > 0
    argv = ("lemma1-audit", "--m-min", "13", "--m-max", "14", "--mode", "sample", "--samples", "50",
            "--seed", "5", "--no-stats")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and json.loads(a)["checked"] == 100
