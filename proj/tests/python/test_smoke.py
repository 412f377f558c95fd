import json
import pathlib

import pytest

import ntacert

ROOT = pathlib.Path(__file__).resolve().parents[2]
DESK = ROOT / "bench" / "desk"
EXAMPLE = (DESK / "01_certificate_example.smt2").read_text()


def test_solve_and_check_example():
    result, cert, stats = ntacert.solve(EXAMPLE, ntacert.preset("7b"))
    assert result == "sat"
    assert stats["self_check_failures"] == 0
    data = json.loads(cert)
    assert data["version"] == "ntacert/1"
    assert data["formula_digest"] == ntacert.formula_digest(EXAMPLE)
    report = ntacert.check(EXAMPLE, cert)
    assert report["verdict"] == "valid"
    assert report["degree"] != 0
    assert [c[0] for c in report["conditions"]] == [
        "sigma", "count", "union_is_box", "boundary", "degree", "inequalities"]


def test_hand_built_certificate():
    cert = {
        "version": "ntacert/1",
        "formula_digest": ntacert.formula_digest(EXAMPLE),
        "sigma": [1, 1, 0, 0],
        "nu": {"z": float(0.2).hex()},
        "beta": [{"x": [float(-0.1).hex(), float(0.05).hex()], "y": [float(1.4).hex(), float(1.9).hex()]}],
    }
    assert ntacert.check(EXAMPLE, json.dumps(cert))["verdict"] == "valid"
    cert["beta"][0]["y"] = [float(0.0).hex(), float(0.5).hex()]
    assert ntacert.check(EXAMPLE, json.dumps(cert))["verdict"] == "invalid"
    cert["beta"][0]["y"] = [float(1.4).hex(), float(1.9).hex()]
    assert ntacert.check(EXAMPLE, json.dumps(cert), degree_budget=0)["verdict"] == "undetermined"
    assert ntacert.check(EXAMPLE, "{")["verdict"] == "invalid"


def test_unknown():
    config = ntacert.SearchConfig()
    config.k = 5
    result, cert, _ = ntacert.solve("(declare-fun x () Real)(assert (= (+ (^ x 2) 1) 0))", config)
    assert result == "unknown"
    assert cert is None


def test_degree():
    assert ntacert.degree(["(^ x 2)"], ["x"], [(-1, 1)]) == ("degree", 0)
    assert ntacert.degree(["(- (^ x 2) 1)"], ["x"], [(-10, 0)]) == ("degree", -1)
    assert ntacert.degree(["(- (^ x 2) 1)"], ["x"], [(0, 10)]) == ("degree", 1)
    assert ntacert.degree(["(^ x 3)"], ["x"], [(-1, 1)]) == ("degree", 1)
    status, value = ntacert.degree(["x"], ["x"], [(0, 1)])
    assert value is None and status != "degree"


def test_dm():
    d = ntacert.dm_decompose(["(- x (tan y))", "(^ z 2)", "w", "(sin w)"], ["x", "y", "z", "w"])
    assert d["under"] == {"equations": [0], "variables": ["x", "y"]}
    assert d["well"] == {"equations": [1], "variables": ["z"]}
    assert d["over"] == {"equations": [2, 3], "variables": ["w"]}


def test_presets_and_errors():
    ids = ntacert.preset_ids()
    assert ids[0] == "1a" and ids[-1] == "7c" and len(ids) == 15
    assert ntacert.preset("1a").boxes == ntacert.BoxStrategy.GRID
    p = ntacert.preset("7c")
    assert p.filter_rank_deficient and p.boxes == ntacert.BoxStrategy.EPS_THEN_GRID
    with pytest.raises(ValueError):
        ntacert.preset("2a")
    with pytest.raises(ValueError):
        ntacert.solve("(assert (= x")
    assert "(assert" in ntacert.normalize(EXAMPLE)


def test_solve_file():
    result, cert, _ = ntacert.solve_file(str(DESK / "03_sin_linear.smt2"))
    assert result == "sat"
