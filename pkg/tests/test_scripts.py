import importlib.util
import json
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_bound_experiment_script(tmp_path):
    out = tmp_path / "r.json"
    code = load("run_bound_experiment").main(["2k-1", "--trials", "6", "--grid", "2,2;3,1", "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == 0 and len(rep["trials"]) == 6


def test_scan_script(tmp_path):
    out = tmp_path / "s.json"
    assert load("scan_conjecture").main(["--trials", "10", "--n-max", "9", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["summary"]["trials"] == 10


def test_tournament_script(capsys):
    assert load("tournament_blocks").main(["--trials", "2"]) == 0
    assert capsys.readouterr().out.count("non-dilated") == 2


def test_grid_parser_rejects_garbage():
    with pytest.raises(ValueError):
        load("run_bound_experiment").parse_grid("2,x")
