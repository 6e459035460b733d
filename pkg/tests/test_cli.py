import json
import subprocess
import sys

import pytest

from prefswaps.cli import ERROR, NEGATIVE, OK, main, run
from prefswaps.datasets import office_path
from prefswaps.model import load_instance, parse_instance

OFFICE = str(office_path())


def call(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out + out.err


def payload(capsys, *argv):
    status = main(["--json", *argv])
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == status
    return doc


def write(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_validate_office(capsys):
    status, out = call(capsys, "validate", OFFICE)
    assert status == OK
    assert "V[Commute] = {-50, -15}" in out
    assert "V[Gym] = {no gym, gym}" in out
    assert "V[Cost] = {-12000, -5000}" in out


def test_validate_empty_and_mismatch(capsys, tmp_path):
    empty = write(tmp_path, {"criteria": [{"name": "a"}, {"name": "b"}], "statements": []})
    assert call(capsys, "validate", empty)[0] == OK
    bad = write(tmp_path, {
        "criteria": [{"name": "a"}, {"name": "b"}],
        "statements": [{"better": [1, "*"], "worse": [0, 1]}],
    }, "bad.json")
    status, out = call(capsys, "validate", bad)
    assert status == ERROR and "wildcard mismatch" in out
    assert call(capsys, "scales", str(tmp_path / "missing.json"))[0] == ERROR


def test_check_statuses(capsys):
    status, out = call(capsys, "check", OFFICE, "x", "y", "--certificate")
    assert status == OK and "verdict: necessary" in out and "lambda[" in out
    status, out = call(capsys, "check", OFFICE, "e2", "e1")
    assert status == NEGATIVE and "verdict: not necessary" in out
    status, out = call(capsys, "check", OFFICE, "--", "-60,no gym,450,-5000", "y")
    assert status == NEGATIVE and "unbounded by P" in out
    status, out = call(capsys, "check", OFFICE, "nowhere", "y")
    assert status == ERROR


def test_check_with_oracles(capsys):
    doc = payload(capsys, "check", OFFICE, "e2", "e1", "--oracle", "6", "--falsify", "2000", "--seed", "3")
    assert doc["necessary"] is False
    assert doc["ilp_oracle"] is None
    assert doc["counterexample"] is not None


def test_falsify_default_from_env(capsys, monkeypatch):
    monkeypatch.setenv("PREFSWAPS_FALSIFY_TRIALS", "0")
    doc = payload(capsys, "check", OFFICE, "e2", "e1", "--falsify")
    assert doc["counterexample"] is None


def test_covector(capsys):
    status, out = call(capsys, "covector", OFFICE, "x", "y")
    assert status == OK
    assert "Gym: [no gym, gym]:-" in out and "Cost: [-12000, -5000]:+" in out


def test_explain_reference(capsys):
    doc = payload(capsys, "explain", OFFICE, "x", "y", "--policy", "reference")
    assert doc["status"] == OK
    assert doc["matching"] == {"Commute": "Cost", "Gym": "Size"}
    assert doc["sequence"][1] == [-50, "no gym", 400, -5000]
    assert doc["kinds"] == ["dominance", "swap", "swap", "dominance"]


def test_explain_as_given_order(capsys):
    doc = payload(capsys, "explain", OFFICE, "x", "y", "--order", "as-given", "--sequence", "Gym")
    assert doc["sequence"][1] == [-45, "gym", 180, -5000]


def test_explain_negative_cases(capsys):
    status, out = call(capsys, "explain", OFFICE, "ABCd", "abcD")
    assert status == NEGATIVE and "necessary but no order-2 explanation" in out
    status, out = call(capsys, "explain", OFFICE, "e2", "e3")
    assert status == OK
    assert call(capsys, "explain", OFFICE, "e2", "e1")[0] == NEGATIVE


def test_explain_non_binary(capsys, tmp_path):
    path = tmp_path / "wc.json"
    assert main(["gen-worstcase", "1", str(path)]) == OK
    capsys.readouterr()
    status, out = call(capsys, "explain", str(path), "x", "y")
    assert status == ERROR and "shortest" in out


def test_delta2_and_dot(capsys, tmp_path):
    dot, graph = tmp_path / "d.dot", tmp_path / "n.dot"
    doc = payload(capsys, "delta2", OFFICE, "--dot", str(dot), "--graph-dot", str(graph))
    assert len(doc["edges"]) == 5
    assert ["Cost", "Commute"] in doc["edges"]
    assert dot.read_text().count("->") == 5
    assert "style=dotted" in graph.read_text()
    empty = write(tmp_path, {"criteria": [{"name": "a"}, {"name": "b"}], "statements": []})
    assert payload(capsys, "delta2", empty)["edges"] == []


def test_worstcase_round_trip(capsys, tmp_path):
    doc = payload(capsys, "gen-worstcase", "2")
    inst = parse_instance(json.dumps({k: v for k, v in doc.items() if k != "status"}))
    path = tmp_path / "wc2.json"
    main(["gen-worstcase", "2", str(path)])
    capsys.readouterr()
    assert load_instance(path) == inst
    doc = payload(capsys, "shortest", str(path), "x", "y")
    assert doc["swaps"] == 4 and doc["steps"] == 4
    assert call(capsys, "shortest", str(path), "x", "y", "--budget", "2")[0] == ERROR
    assert call(capsys, "shortest", str(path), "y", "x")[0] == NEGATIVE


def test_oracle_subcommand(capsys):
    doc = payload(capsys, "oracle", OFFICE, "ABCd", "abcD", "--trials", "500")
    assert doc["necessary"] is True and doc["contradiction"] is False
    assert doc["ilp_oracle"]["r"] == 1
    doc = payload(capsys, "oracle", OFFICE, "e2", "e1", "--trials", "2000")
    assert doc["necessary"] is False and doc["counterexample"] is not None


def test_usage_error(capsys):
    assert main(["check", OFFICE]) == ERROR
    capsys.readouterr()


def test_determinism():
    first, _ = run(["check", OFFICE, "e2", "e1", "--falsify", "1000", "--seed", "9"])
    second, _ = run(["check", OFFICE, "e2", "e1", "--falsify", "1000", "--seed", "9"])
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prefswaps", "delta2", OFFICE],
                          capture_output=True, text=True)
    assert proc.returncode == OK and proc.stdout.startswith("5 edges")
