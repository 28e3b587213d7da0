import json
import subprocess
import sys
from pathlib import Path

import pytest

from relthom.cli import main

ROOT = Path(__file__).resolve().parent.parent
PROFILES = ROOT / "profiles"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lookup_plain(capsys):
    code, out, _ = run(capsys, "lookup", "--type", "Sigma_FR", "--m", "8", "--n", "8", "--category", "oriented")
    assert code == 0 and out == "12*p1^2 - 9*p2\n"


def test_lookup_defaults_and_target(capsys):
    assert run(capsys, "lookup", "--type", "A1", "--m", "1", "--n", "1", "--category", "complex")[1] == "-c1 + c'1\n"
    assert run(capsys, "lookup", "--type", "A1", "--m", "1", "--n", "1", "--category", "complex",
               "--target", "zero")[1] == "-c1\n"
    assert run(capsys, "lookup", "--type", "A2", "--m", "6", "--n", "2", "--category", "unoriented")[1] == "w6\n"


def test_lookup_json(capsys):
    code, out, _ = run(capsys, "lookup", "--type", "A2", "--m", "4", "--n", "5", "--category", "oriented", "--json")
    d = json.loads(out)
    assert code == 0 and d["tp"] == "-p1" and d["codimension"] == 4 and d["ring"] == "IntDyadic"


def test_lookup_miss_is_input_error(capsys):
    code, out, err = run(capsys, "lookup", "--type", "A1", "--m", "3", "--n", "3", "--category", "complex")
    assert code == 2 and out == "" and err.startswith("error:")


def test_usage_errors(capsys):
    assert run(capsys, "lookup", "--type", "A1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_predict_profiles(capsys):
    code, out, _ = run(capsys, "predict", "--profile", str(PROFILES / "riemann-hurwitz-deg5.json"))
    assert code == 0 and json.loads(out)["total"] == 4
    code, out, _ = run(capsys, "predict", "--profile", str(PROFILES / "case-viii-zero.json"))
    assert code == 0 and json.loads(out)["total"] == 0
    code, out, _ = run(capsys, "predict", "--profile", str(PROFILES / "case-i-sphere.json"))
    assert code == 0 and json.loads(out)["correction"] == 0


def test_predict_integrality_failure(capsys):
    code, out, err = run(capsys, "predict", "--profile", str(PROFILES / "half-integer.json"))
    assert code == 1 and out == "" and "not integral" in err


def test_predict_bad_profile(capsys, tmp_path):
    assert run(capsys, "predict", "--profile", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "A1", "category": "Complex", "m": 1, "n": 1, "colour": 1,
                               "prescribed": {}, "extension": {}}))
    assert run(capsys, "predict", "--profile", str(bad))[0] == 2


def test_verify_is_byte_stable(capsys, tmp_path):
    code, first, err = run(capsys, "verify", "--suite", "algebra", "--seed", "42")
    assert code == 0 and err == "algebra: 17/17 pass\n"
    _, second, _ = run(capsys, "verify", "--suite", "algebra", "--seed", "42")
    assert first == second
    out = tmp_path / "r.json"
    assert run(capsys, "verify", "--suite", "catalog", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["suite"] == "catalog"


def test_dump_catalog(capsys, tmp_path):
    out = tmp_path / "cat.json"
    assert run(capsys, "dump-catalog", "--out", str(out))[0] == 0
    assert json.loads(out.read_text()) == json.loads((ROOT / "tests" / "golden" / "catalog.json").read_text())


def test_scenarios(capsys, tmp_path):
    code, out, _ = run(capsys, "run", "--scenario", str(PROFILES / "verify-algebra.scenario.json"))
    assert code == 0 and json.loads(out)["suite"] == "algebra"
    sc = tmp_path / "s.json"
    sc.write_text(json.dumps({"task": "Predict", "profile": str(PROFILES / "riemann-hurwitz-deg5.json")}))
    code, out, _ = run(capsys, "run", "--scenario", str(sc))
    assert code == 0 and json.loads(out)["total"] == 4
    sc.write_text(json.dumps({"task": "Lookup", "type": "A1", "m": 2, "n": 3, "category": "unoriented"}))
    assert run(capsys, "run", "--scenario", str(sc))[1] == "w1^2 + w2\n"


@pytest.mark.parametrize("doc", [
    {"task": "Explode"},
    {"task": "Verify", "suite": "algebra", "tolerance": 1},
    {"task": "Lookup", "type": "A1"},
    [1, 2],
])
def test_bad_scenarios(capsys, tmp_path, doc):
    sc = tmp_path / "s.json"
    sc.write_text(json.dumps(doc))
    assert run(capsys, "run", "--scenario", str(sc))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relthom", "lookup", "--type", "A1", "--m", "2", "--n", "3",
                           "--category", "complex", "--target", "zero"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "c1^2 - c2\n"
