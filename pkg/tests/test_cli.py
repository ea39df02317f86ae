import hashlib
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from exactqaoa.cli import main
from exactqaoa.optimize import Landscape, fmt

FIX = Path(__file__).parent / "fixtures"
K3 = str(FIX / "k3_maxcut.json")
ZERO = str(FIX / "k3_zero.json")
P1 = str(FIX / "k3_params.json")
HYPER = str(FIX / "gm_hypergraph.json")
GM_P2 = str(FIX / "gm_p2_params.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


# expect


def test_expect_k3_baseline():
    code, out, _ = run("expect", K3, ZERO)
    assert code == 0
    rep = json.loads(out)
    assert rep["total"] == 1.5
    assert rep["mode"] == "pm" and rep["layers"] == 1
    assert [t["v"] for t in rep["terms"]] == [[], [0], [1], [2], [0, 1], [1, 2], [0, 2]]
    assert rep["digest"] == "sha256:" + hashlib.sha256(Path(K3).read_bytes()).hexdigest()
    total = sum(t["weight"] * t["value"] for t in rep["terms"])
    assert abs(total - rep["total"]) < 1e-12


@pytest.mark.parametrize("state", ["s", "omega"])
def test_expect_gm_p2_matches_oracle_golden(state):
    golden = json.loads((FIX / "gm_p2_golden.json").read_text())[state]
    code, out, _ = run("expect", HYPER, GM_P2, "--mode", "gm", "--state", state)
    assert code == 0
    rep = json.loads(out)
    assert rep["layers"] == 2
    assert abs(rep["total"] - golden["total"]) < 1e-9
    for term, ref in zip(rep["terms"], golden["terms"]):
        assert abs(term["value"] - ref) < 1e-9


def test_output_is_byte_stable_and_floats_round_trip():
    a = run("expect", K3, P1)[1]
    b = run("expect", K3, P1)[1]
    assert a == b
    assert "timing_s" not in a
    assert float(fmt(json.loads(a)["total"])) == json.loads(a)["total"]
    timed = json.loads(run("expect", K3, P1, "--timing")[1])
    assert timed["timing_s"] >= 0


def test_expect_csv():
    code, out, _ = run("expect", K3, ZERO, "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "v,weight,value" and lines[-1] == "total,,1.5"
    assert lines[5] == "0 1,-0.5,0"


# error paths


def test_malformed_json_is_a_schema_error():
    code, out, err = run("expect", K3, FIX / "bad.json")
    assert code == 2 and out == ""
    assert "line 1 column 2" in err


@pytest.mark.parametrize("doc, needle", [
    ({"type": "maxcut", "n": 3, "edges": [{"v": [0, 1], "w": "x"}]}, "edges[0].w"),
    ({"type": "maxcut", "n": 3, "edges": [{"v": [0, 5]}]}, "edges[0]"),
    ({"type": "maxcut", "n": 3, "edges": [], "extra": 1}, "extra"),
    ({"type": "knapsack"}, "type"),
    ({"type": "mis", "n": 2, "edges": [{"v": [0, 1]}], "s": [1, 1], "lam1": 1, "lam2": -1}, "lam2"),
])
def test_schema_errors_name_the_field(tmp_path, doc, needle):
    code, _, err = run("expect", write(tmp_path, "p.json", doc), ZERO)
    assert code == 2
    assert needle in err


def test_missing_file_and_bad_flags():
    assert run("expect", FIX / "nope.json", ZERO)[0] == 2
    assert run("expect", K3)[0] == 2
    assert run("bogus")[0] == 2
    assert run("expect", K3, ZERO, "--mode", "xx")[0] == 2
    assert run("expect", HYPER, GM_P2)[0] == 2  # hypergraphs need --mode gm
    assert run("expect", HYPER, GM_P2, "--mode", "gm", "--layers", "3")[0] == 2


def test_caps_exit_3():
    assert run("verify", K3, P1, "--oracle-cap", "2")[0] == 3
    assert run("expect", HYPER, GM_P2, "--mode", "gm", "--dimension-cap", "0")[0] == 3


# verify


@pytest.mark.parametrize("args", [(K3, P1), (HYPER, GM_P2, "--mode", "gm"), (HYPER, GM_P2, "--mode", "gm", "--state", "omega")])
def test_verify_fixture_passes(args):
    code, out, _ = run("verify", *args)
    rep = json.loads(out)
    assert code == 0 and rep["oracle"]["ok"] is True
    assert rep["oracle"]["max_abs_error"] < 1e-9


def test_verify_perturbation_is_caught():
    code, out, _ = run("verify", K3, P1, "--perturb", "1e-6")
    assert code == 1
    assert json.loads(out)["oracle"]["ok"] is False


@pytest.mark.parametrize("extra", [
    ("--mode", "pm"),
    ("--mode", "gm", "--layers", "1"),
    ("--mode", "gm", "--layers", "2", "--state", "omega"),
    ("--mode", "gm", "--layers", "3"),
])
def test_seed_sweep_of_twenty(extra):
    code, out, _ = run("verify", "--seed", "7", "--count", "20", *extra)
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and len(rep["instances"]) == 20
    assert out == run("verify", "--seed", "7", "--count", "20", *extra)[1]


def test_verify_argument_conflicts():
    assert run("verify")[0] == 2
    assert run("verify", K3, P1, "--seed", "1")[0] == 2


# scan and refine


def test_scan_k3_matches_golden_checksum():
    golden = json.loads((FIX / "k3_scan_golden.json").read_text())
    argv = ["scan", K3, "--format", "csv"]
    for a in golden["axes"]:
        argv += ["--axis", a]
    code, out, _ = run(*argv)
    assert code == 0
    assert hashlib.sha256(out.encode()).hexdigest() == golden["sha256"]


def test_scan_two_by_two_round_trips(tmp_path):
    path = tmp_path / "land.csv"
    code, out, _ = run("scan", K3, "--axis", "beta:0:0.5:2", "--axis", "gamma:0:0.5:2", "--format", "csv", "-o", path)
    assert code == 0 and out == ""
    land = Landscape.from_csv(path.read_text())
    assert land.values.shape == (2, 2) and land.values[0, 0] == 1.5
    assert land.to_csv() == path.read_text()
    code, out, _ = run("scan", K3, "--axis", "beta:0:0.5:2", "--axis", "gamma:0:0.5:2")
    assert Landscape.from_json(out).values.tolist() == land.values.tolist()


def test_scan_errors(tmp_path):
    assert run("scan", K3, "--axis", "beta:0:1:2", "-o", tmp_path / "missing" / "x.csv")[0] == 2
    assert run("scan", K3, "--axis", "beta:0:1:100", "--axis", "gamma:0:1:100", "--max-points", "999")[0] == 3
    assert run("scan", K3)[0] == 2
    assert run("scan", K3, "--axis", "beta:0:1:2", "--axis", "beta:0:1:2")[0] == 2
    assert run("scan", K3, "--axis", "delta:0:1:2")[0] == 2


def test_scan_minimize_reports_true_values():
    a = Landscape.from_json(run("scan", K3, "--axis", "beta:0:1:3")[1])
    b = Landscape.from_json(run("scan", K3, "--axis", "beta:0:1:3", "--minimize")[1])
    assert a.values.tolist() == b.values.tolist()


def test_refine_k3():
    code, out, _ = run("refine", K3, "--start", "beta=0.3", "--start", "gamma=0.7", "--tol", "1e-7")
    rep = json.loads(out)
    assert code == 0
    start = json.loads(run("expect", K3, P1)[1])["total"]
    assert rep["value"] >= start
    assert abs(rep["value"] - 2.0) < 1e-6  # K3 cuts at most two edges
    code, out, _ = run("refine", K3, "--axis", "beta:0:1.5:9", "--axis", "gamma:0:3:9")
    assert code == 0 and json.loads(out)["value"] >= 1.5
    low = json.loads(run("refine", K3, "--start", "beta=0.3", "--start", "gamma=0.7", "--minimize")[1])
    assert low["value"] < start
    assert run("refine", K3)[0] == 2
    assert run("refine", K3, "--start", "beta")[0] == 2


def test_gm_layer_axes(tmp_path):
    code, out, _ = run("scan", HYPER, "--mode", "gm", "--layers", "2", "--axis", "gamma2:0:1:3", "--axis", "beta1:0:1:2")
    assert code == 0 and Landscape.from_json(out).values.shape == (3, 2)
    assert run("scan", HYPER, "--mode", "gm", "--axis", "gamma2:0:1:3")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "exactqaoa", "expect", K3, ZERO], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["total"] == 1.5
