from __future__ import annotations

import json

import pytest

from ietlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_family_even(capsys):
    code, out = run(capsys, "family", "--n", "6", "--a", "2", "--c", "1")
    assert code == 0
    doc = json.loads(out.out)
    assert set(doc) == {"tool_version", "config", "results", "verdict"}
    assert doc["results"]["oracle"] == "equal"
    assert doc["verdict"] == "pass"
    assert doc["results"]["cycle_word"] == "0 1 0^2 1 0^2 1^3 0^2 1 0^2 1^5"


def test_family_small_n_is_usage_error(capsys):
    code, out = run(capsys, "family", "--n", "3")
    assert code == 2
    assert "n must be >= 4" in out.err


def test_family_odd_reports_failure(capsys):
    code, out = run(capsys, "family", "--n", "5", "--a", "2", "--c", "2")
    assert code == 1
    doc = json.loads(out.out)
    assert doc["verdict"] == "fail"
    assert "note" in doc["results"]


def test_bad_flag_is_usage_error(capsys):
    assert run(capsys, "lemmas", "--n", "6")[0] == 2
    assert run(capsys, "lemmas", "--n", "6", "--p", "x")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_schedule_violation_is_usage_error(capsys):
    code, out = run(capsys, "measures", "--n", "6", "--p", "6")
    assert code == 2


def test_induce(capsys):
    code, out = run(capsys, "induce", "--n", "6", "--p", "7", "--c1", "8", "--m", "3")
    assert code == 0
    res = json.loads(out.out)["results"]
    assert res["summary"] == "prefix match: 3 cycles"
    assert res["tie"]["step"] == res["expected_runs"]


def test_induce_empty(capsys):
    code, out = run(capsys, "induce", "--n", "6", "--p", "7", "--c1", "8", "--m", "0")
    assert code == 0
    res = json.loads(out.out)["results"]
    assert res["summary"] == "prefix match: 0 cycles"
    assert res["tie"]["step"] == 0


def test_induce_short_budget_fails(capsys):
    code, out = run(capsys, "induce", "--n", "6", "--p", "7", "--c1", "8", "--m", "2", "--max-runs", "5")
    assert code == 1
    res = json.loads(out.out)["results"]
    assert res["first_divergence"]["run"] == 5


def test_measures_csv(capsys):
    code, out = run(capsys, "measures", "--n", "6", "--p", "8", "--c1", "64", "--m", "6", "--format", "csv")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0] == "j,k,i,numerator,denominator"
    assert len(lines) == 1 + 6 * 5 * 6


def test_measures_json_self_distance(capsys):
    code, out = run(capsys, "measures", "--n", "6", "--p", "8", "--c1", "64", "--m", "6")
    res = json.loads(out.out)["results"]
    same = [r for r in res["pairwise_l1"] if r["j1"] == r["j2"]]
    assert all(r["distance"] == "0/1" for r in same)
    assert all(v == "1/1" for vals in res["partition_of_unity"].values() for v in vals)


def test_lemmas_all_pass(capsys):
    code, out = run(capsys, "lemmas", "--n", "6", "--p", "24", "--c1", "576", "--m", "6", "--K", "4")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["results"]["passed"]
    first = doc["results"]["lemmas"][0]
    assert {"lemma_id", "params", "instances_checked", "failures"} <= set(first)


def test_lemmas_K_out_of_range(capsys):
    assert run(capsys, "lemmas", "--n", "6", "--p", "8", "--m", "3", "--K", "3")[0] == 2


def test_dimension_csv(capsys):
    code, out = run(capsys, "dimension", "--n", "6", "--p", "8", "--c1", "64", "--m", "8", "--i", "3", "--j", "5", "--format", "csv")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0].startswith("k,lower,upper,gap_bound")
    assert all(float(line.split(",")[2]) <= 1 for line in lines[1:])


def test_dimension_pair_errors(capsys):
    base = ["dimension", "--n", "6", "--p", "8", "--c1", "64", "--m", "8"]
    assert run(capsys, *base, "--i", "3")[0] == 2
    assert run(capsys, *base, "--i", "3", "--j", "3")[0] == 2
    assert run(capsys, *base, "--format", "csv")[0] == 2
    assert run(capsys, *base, "--K", "7")[0] == 2


def test_oracle(capsys):
    code, out = run(capsys, "oracle", "--n", "6", "--p", "7", "--c1", "8", "--m", "3", "--K", "1")
    assert code == 0
    checks = json.loads(out.out)["results"]["checks"]
    assert len(checks) == 6 and all(c["equal"] for c in checks)


def test_out_file_atomic_and_deterministic(tmp_path, capsys):
    target = tmp_path / "lem.json"
    argv = ["lemmas", "--n", "6", "--p", "8", "--c1", "64", "--m", "4", "--K", "2", "--out", str(target)]
    assert main(argv) == 0
    first = target.read_bytes()
    assert main(argv) == 0
    assert target.read_bytes() == first
    assert [p.name for p in tmp_path.iterdir()] == ["lem.json"]
    assert capsys.readouterr().out == ""


def test_no_file_on_usage_error(tmp_path, capsys):
    target = tmp_path / "x.json"
    assert main(["measures", "--n", "6", "--p", "6", "--out", str(target)]) == 2
    assert not target.exists()


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit):
        from ietlab.cli import build_parser

        build_parser().parse_args(["dimension", "--help"])
    text = capsys.readouterr().out
    assert "ceil(K/3)" in text and "default: json" in text
