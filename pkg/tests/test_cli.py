import json
import subprocess
import sys

import pytest

from koszul.cli import dispatch, main
from koszul.io import koszul_input_from_json, koszul_input_to_json, subspace_from_json, subspace_to_json

TWO = {"field": {"char": 0}, "dim": 4, "Kperp": [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]]}


@pytest.fixture
def files(tmp_path):
    def put(name, data):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)

    return put


def test_dims(files):
    res = dispatch(["dims", "--input", files("k.json", TWO), "--qmax", "4"])
    assert res.code == 0
    assert res.report["results"]["dims"]["entries"] == {"0": 2, "1": 4, "2": 6, "3": 8, "4": 10}
    assert res.report["seed"] == 0 and len(res.report["input_digest"]) == 64


def test_dims_both_routes_and_threads(files):
    res = dispatch(["dims", "--input", files("k.json", TWO), "--qmax", "3", "--route", "both", "--threads", "2"])
    assert res.code == 0


def test_green_reports_char2_value(files):
    res = dispatch(["green", "--i", "2", "--char", "2", "--qmax", "3"])
    assert res.code == 0
    r = res.report["results"]
    assert r["label"] == "experimental"
    assert set(r["dims"]["entries"]) == {"0", "1", "2", "3"}


def test_betti_table_format():
    res = dispatch(["betti", "--genus", "7", "--format", "table"])
    assert res.code == 0 and "10" in res.text


def test_malformed_json(files):
    res = dispatch(["dims", "--input", files("bad.json", "{oops"), "--qmax", "2"])
    assert res.code == 1 and "not valid JSON" in res.text


def test_usage_errors():
    assert dispatch([]).code == 1
    assert dispatch(["dims", "--qmax", "2"]).code == 1
    assert dispatch(["nonsense"]).code == 1


def test_budget_exit_code(files, monkeypatch):
    monkeypatch.setenv("KOSZUL_BUDGET", "5")
    assert dispatch(["dims", "--input", files("k.json", TWO), "--qmax", "3"]).code == 2


def test_precondition_exit_code(files):
    arr = {"ambient_dim": 2, "forms": [[1, 0], [2, 0]]}
    assert dispatch(["arrangement", "flats", "--input", files("a.json", arr)]).code == 1


def test_determinism(files):
    path = files("k.json", TWO)
    a = dispatch(["resonance", "--input", path, "--seed", "7"])
    b = dispatch(["resonance", "--input", path, "--seed", "7"])
    assert a.text == b.text and a.report["seed"] == 7


def test_timing_flag(files):
    res = dispatch(["dims", "--input", files("k.json", TWO), "--qmax", "1", "--timing"])
    assert "timing_seconds" in res.report


def test_resonance_with_components(files):
    kp = {"field": {"char": 0}, "dim": 4, "Kperp": [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0]]}
    comps = [[[1, 0, 0, 0], [0, 1, 0, 0]]]
    res = dispatch(["resonance", "--input", files("k.json", kp), "--components", files("c.json", comps)])
    assert res.report["results"]["components"] == [{"dim": 2, "isotropic": True, "separable": False}]


def test_arrangement_commands(files):
    arr = files("a.json", {"ambient_dim": 2, "forms": [[1, 0], [0, 1], [1, -1]]})
    part = files("p.json", {"classes": [[0], [1], [2]], "multiplicities": [1, 1, 1]})
    chen = dispatch(["arrangement", "chen", "--input", arr, "--qmax", "5"])
    assert chen.report["results"]["chen"] == {"2": 1, "3": 2, "4": 3, "5": 4}
    assert chen.report["results"]["b1"] == 3
    mn = dispatch(["multinet", "--input", arr, "--partition", part])
    assert mn.report["results"]["component_isotropic"] is True
    assert dispatch(["arrangement", "multinet", "--input", arr]).code == 1


def test_graphic_and_bgg(files):
    g = files("g.json", {"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
    res = dispatch(["graphic", "--input", g, "--qmax", "5"])
    assert res.report["results"]["agrees"] is True
    b = dispatch(["bgg", "--input", files("k.json", TWO), "--imax", "3"])
    assert b.report["results"]["tor"]["1"] == {"2": 2}


def test_out_file(files, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["betti", "--genus", "5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["results"]["genus"] == 5


def test_subspace_roundtrip():
    inp = koszul_input_from_json({"field": {"char": 0}, "dim": 4, "K": [["1/2", 0, 3, 0, 0, 1], [0, 1, 0, "-2/3", 0, 0]]})
    again = koszul_input_from_json(koszul_input_to_json(inp))
    assert again == inp
    assert subspace_from_json(subspace_to_json(inp.K)) == inp.K


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "koszul.cli", "betti", "--genus", "6"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["b1"]["2"] == 5
