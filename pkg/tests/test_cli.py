import io
import json
import subprocess
import sys
from dataclasses import replace

import jsonschema
import pytest

from nordenlight import cli

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
SUBSPACE = {
    "type": "object",
    "required": ["dim", "basis"],
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "basis": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
}
RESIDUAL = {
    "type": "object",
    "required": ["evaluations", "nonzero", "passed"],
    "properties": {
        "evaluations": {"type": "integer"},
        "nonzero": {"type": "integer"},
        "passed": {"type": "boolean"},
    },
}
REPORT = {
    "type": "object",
    "required": ["report", "schema", "ok"],
    "properties": {
        "report": {"enum": ["classify", "split", "cross", "verify", "catalog", "fuzz"]},
        "schema": {"const": 1},
        "ok": {"type": "boolean"},
        "subspace": {
            "type": "object",
            "required": ["name", "dim", "basis"],
            "properties": {"basis": SUBSPACE["properties"]["basis"]},
        },
        "ambient_checks": {"type": "object", "additionalProperties": RESIDUAL},
        "kaehler": {
            "type": "object",
            "properties": {"checks": {"type": "object", "additionalProperties": RESIDUAL}},
        },
    },
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def machine(*argv):
    code, out, err = run("--format", "machine", *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT)
    return code, doc


@pytest.fixture(scope="module")
def gl2c_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("specs") / "gl2c.json"
    code, _, _ = run("catalog", "--name", "gl2c", "--export", str(path))
    assert code == 0
    return str(path)


def test_catalog_report(gl2c_file):
    code, doc = machine("catalog", "--name", "gl2r")
    assert code == 0 and doc["ok"]
    assert doc["golden_facts"]["sl2r_normal_space"]["holds"]


def test_classify_from_file(gl2c_file):
    code, doc = machine("classify", "--input", gl2c_file, "--subspace", "u2")
    assert code == 0
    assert doc["signature"] == [3, 1, 0]
    assert doc["complex_type"]["kind"] == "lagrangian"
    code, doc = machine("classify", "--input", gl2c_file, "--subspace", "u2", "--metric", "gtilde")
    assert doc["degeneracy"]["kind"] == "totally_lightlike"
    assert doc["radical_transversal"] is True


def test_split_and_cross(gl2c_file):
    code, doc = machine("split", "--builtin", "gl2r", "--subspace", "sl2r", "--radical-transversal")
    assert code == 0
    s = doc["splitting"]
    assert s["case"] == "coisotropic" and s["radical_transversal"]["holds"]
    assert all(s["invariants"].values())
    code, doc = machine("cross", "--input", gl2c_file, "--subspace", "su2")
    assert code == 0
    assert doc["gtilde"]["degeneracy"]["kind"] == "isotropic"
    assert all(doc["cr_frames"]["g"].values())


def test_verify_runs_all_suites(gl2c_file):
    code, doc = machine("verify", "--input", gl2c_file, "--subspace", "su2")
    assert code == 0 and doc["ok"]
    sub = doc["submanifold"]
    assert sub["geodesic"]["totally_geodesic"] is True
    assert all(r["passed"] for r in sub["identities"].values())
    assert all(r["passed"] for r in sub["curvature"]["residuals"].values())


def test_verify_skips_when_not_totally_real():
    code, doc = machine("verify", "--builtin", "gl2r", "--subspace", "sl2r")
    assert code == 0
    assert "skipped" in doc["submanifold"]


def test_fuzz(gl2c_file):
    code, doc = machine("fuzz", "--ambient", "gl2r", "--seeds", "10", "--seed", "3")
    assert code == 0 and doc["seeds"] == 10 and not doc["failures"]
    code2, doc2 = machine("fuzz", "--ambient", "gl2r", "--seeds", "10", "--seed", "3")
    assert doc == doc2


def test_global_flags_after_the_subcommand():
    a = run("--format", "machine", "classify", "--builtin", "gl2r", "--subspace", "sl2r")
    b = run("classify", "--builtin", "gl2r", "--subspace", "sl2r", "--format", "machine")
    assert a == b


def test_text_output_is_readable():
    code, out, _ = run("classify", "--builtin", "gl2c", "--subspace", "su2")
    assert code == 0
    assert "kind: totally_real" in out
    assert "holomorphic: no" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("split", "--builtin", "gl2c", "--subspace", "u2"),
        ("split", "--builtin", "gl2c", "--subspace", "diagonal", "--radical-transversal"),
        ("classify", "--builtin", "gl2c", "--subspace", "nope"),
        ("classify", "--input", "/nonexistent/spec.json", "--subspace", "u2"),
    ],
)
def test_bad_input_exits_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert err.startswith("error:")
    assert out == ""


def test_malformed_spec_exits_2(tmp_path, gl2c_file):
    doc = json.load(open(gl2c_file))
    doc["g"][0][0] = 1.5
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc, indent=2))
    code, _, err = run("classify", "--input", str(path), "--subspace", "u2")
    assert code == 2
    assert f"{path}:" in err and "g[0][0]" in err


def test_non_symmetric_metric_exits_2(tmp_path, gl2c_file):
    doc = json.load(open(gl2c_file))
    doc["g"][0][1] = "1"
    path = tmp_path / "asymmetric.json"
    path.write_text(json.dumps(doc, indent=2))
    code, out, err = run("classify", "--input", str(path), "--subspace", "u2", "--metric", "g")
    assert code == 2 and out == ""
    assert "not symmetric" in err


def test_failed_check_exits_1(monkeypatch):
    from nordenlight import catalog

    entry = catalog.load_builtin("gl2r")
    broken = catalog.GoldenFact("always_false", "a deliberately false statement", lambda e: False)
    monkeypatch.setitem(catalog._CACHE, "gl2r", replace(entry, expected=entry.expected + (broken,)))
    code, doc = machine("catalog", "--name", "gl2r")
    assert code == 1 and not doc["ok"]


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        cli.run(["classify", "--builtin", "gl2r"], io.StringIO(), io.StringIO())
    assert info.value.code == 2


def test_reports_are_byte_deterministic_across_processes(gl2c_file):
    argv = [sys.executable, "-m", "nordenlight", "--format", "machine", "cross",
            "--input", gl2c_file, "--subspace", "u2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert first.decode() == run("--format", "machine", "cross", "--input", gl2c_file, "--subspace", "u2")[1]
