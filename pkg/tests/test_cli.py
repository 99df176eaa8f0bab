import csv
import json

import pytest

from corrineq.cli import main
from corrineq.functional import instance
from corrineq.instances import (
    dumps,
    instance_from_json,
    instance_to_json,
    series_from_json,
    series_to_json,
)
from corrineq.spaces import random_fkg_measure, random_monotone_fn
from corrineq.errors import DomainError

STEP = {"space": {"type": "chain", "N": 2, "mu": ["1/2", "1/2"]},
        "functions": [["0", "1"], ["0", "1"], ["0", "1"]],
        "series": [["0", "1"], ["0", "0"], ["0", "0"], ["0", "0"]]}


@pytest.fixture
def step_file(tmp_path):
    path = tmp_path / "step.json"
    path.write_text(json.dumps(STEP))
    return path


def test_instance_round_trip():
    inst = instance_from_json(STEP)
    assert instance_to_json(inst) == {k: STEP[k] for k in ("space", "functions")}
    lat = random_fkg_measure(3, 1)
    li = instance(lat, [random_monotone_fn(lat, 2), random_monotone_fn(lat, 3)])
    assert instance_from_json(json.loads(dumps(instance_to_json(li)))) == li
    p = series_from_json(STEP)
    assert series_to_json(p)["series"] == STEP["series"]


@pytest.mark.parametrize("bad", [
    {"space": {"type": "chain", "N": 3, "mu": ["1/2", "1/2"]}, "functions": [["0", "1"]]},
    {"space": {"type": "torus", "mu": ["1"]}, "functions": [["0"]]},
    {"space": {"type": "chain", "N": 2, "mu": ["0.5", "0.5"]}, "functions": [["0", "1"]]},
    {"space": {"type": "chain", "N": 2, "mu": ["1/2", "1/2"]}, "functions": []},
])
def test_malformed_instances(bad):
    with pytest.raises(DomainError):
        instance_from_json(bad)


def test_eval(step_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["eval", str(step_file), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["E_n"] == "3/8"
    assert rep["E_lambda"]["(2,1)"] == "3/4"
    assert rep["E_delta"]["{1,2}"] == "1/2"


def test_eval_invalid_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["eval", str(bad)]) == 2
    assert main(["eval", str(tmp_path / "missing.json")]) == 2


def test_series(step_file, capsys):
    assert main(["series", str(step_file), "--route", "both"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["direct"] == ["0", "1/2", "1/8", "1/16", "5/128"]
    assert rep["routes_agree"] and rep["nonnegative"]


@pytest.mark.parametrize("mode", ["F-check", "B-check", "e200"])
def test_coeffs(mode, tmp_path, capsys):
    csv_path = tmp_path / "s.csv"
    assert main(["coeffs", "--N", "3", "--n", "3", "--mu", "1/6,1/3,1/2",
                 "--mode", mode, "--csv", str(csv_path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["base_case"][0]["oracle"] == "1"
    rows = list(csv.reader(csv_path.open()))
    assert len(rows) > 1


def test_coeffs_bad_mu(capsys):
    assert main(["coeffs", "--N", "2", "--n", "2", "--mu", "1/2,1/3"]) == 2
    assert main(["coeffs", "--N", "3", "--n", "2", "--mu", "1/2,1/2"]) == 2


def test_partitions_csv(capsys):
    assert main(["partitions", "--n", "4"]) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == ["n", "shape", "length", "count", "c_lambda"]
    assert ["4", "(2,2)", "2", "3", "-1"] in rows


def test_batch_commands(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify-lemma", "--seed", "1", "--count", "50", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["instances"] == 50
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["search-fkg", "--seed", "2", "--count", "100", "--out", str(a)]) in (0, 1)
    assert main(["--seed", "2", "--count", "100", "search-fkg", "--out", str(b)]) in (0, 1)
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    assert main(["corollary", "--seed", "3", "--count", "5", "--lattice-count", "3",
                 "--out", str(c)]) == 0


def test_bad_config_exit_code():
    assert main(["verify-lemma", "--N-max", "12", "--count", "1"]) == 2
