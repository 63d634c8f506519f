"""End-to-end checks of the apolar binary: exit codes, error JSON and schema
conformance of every report kind."""

import json
import os
import pathlib
import shutil
import subprocess

import jsonschema
import pytest
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parents[2]
CORPUS = ROOT / "corpus"
SCHEMAS = ROOT / "schemas"
BIN = os.environ.get("APOLAR_BIN", str(ROOT / "build" / "apolar"))


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resource = Resource.from_contents(schema)
        resources.append((schema["$id"], resource))
        resources.append((path.name, resource))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, env=None, code=0):
    proc = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=env, timeout=600)
    assert proc.returncode == code, proc.stderr
    return proc


def report(*args, code=0):
    proc = run(*args, code=code)
    return json.loads(proc.stdout)


def error(*args, code):
    proc = run(*args, code=code)
    err = json.loads(proc.stderr.strip().splitlines()[-1])
    validate(err, "error")
    assert err["error"]["exit_code"] == code
    return err["error"]


def catalog():
    return json.loads((CORPUS / "catalog.json").read_text())["cases"]


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


def test_corpus_files_match_schemas():
    validate(json.loads((CORPUS / "catalog.json").read_text()), "catalog")
    for path in CORPUS.glob("*.json"):
        if path.name == "catalog.json":
            continue
        doc = json.loads(path.read_text())
        validate(doc, "tensor" if "degree" in doc else "ideal")


def test_bounds_report():
    doc = report("bounds", CORPUS / "mono-4443.json")
    validate(doc, "bounds-report")
    assert doc["lower"] == {"value": 86, "provenance": "disjoint-module"}
    assert doc["upper"]["value"] == 100
    assert doc["catalecticant"]["value"] == 70
    for path in CORPUS.glob("*.json"):
        if path.name.startswith(("mono-", "tensor-")) and "33111" not in path.name:
            validate(report("bounds", path), "bounds-report")


def test_search_outcomes():
    doc = report("search", CORPUS / "mono-222.json", "--r", 8)
    validate(doc, "search-outcome")
    assert doc["status"] == "Exhausted"
    found = report("search", CORPUS / "mono-21.json", "--r", 2)
    validate(found, "search-outcome")
    assert found["candidate"]["monomial_generators"] == ["a1^2"]
    flags = report("search", CORPUS / "mono-2211.json", "--r", 11, "--no-symmetry", "--growth-prune", "--horizon", 6)
    assert flags["status"] == "Exhausted"


def test_budget_exit_code():
    proc = run("search", CORPUS / "mono-2211.json", "--r", 11, "--budget", 3, code=4)
    doc = json.loads(proc.stdout)
    validate(doc, "search-outcome")
    assert doc["status"] == "BudgetExceeded"
    err = json.loads(proc.stderr)
    validate(err, "error")
    assert err["error"]["kind"] == "budget"


def test_verify_reports():
    for case in catalog():
        if case["command"] != "verify":
            continue
        args = ["verify", CORPUS / case["ideal"], CORPUS / case["tensor"], "--r", case["r"]]
        if case.get("horizon"):
            args += ["--horizon", case["horizon"]]
        doc = report(*args)
        validate(doc, "verify-report")
        assert doc["passed"] is True


def test_macaulay_reports():
    exp = report("macaulay", "exponent", "--r", 15, "--d", 3)
    assert exp["exponent"] == 22
    seg = report("macaulay", "segment", "--n", 2, "--d", 2, "--r", 3)
    assert seg["monomials"] == ["a0*a2", "a1*a2", "a2^2"]
    bar = report("macaulay", "lexbar", "--degrees", "2,3,3,4", "--n", 3, "--r", 38)
    assert bar["growth"] == 65
    for doc in (exp, seg, bar):
        validate(doc, "macaulay")
    big = report("macaulay", "exponent", "--r", "123456789012345678901234567890", "--d", 2)
    validate(big, "macaulay")
    assert isinstance(big["exponent"], str)


def test_corpus_list():
    full = report("corpus", "list")
    validate(full, "catalog")
    assert len(full["cases"]) == len(catalog())
    slow = [c["name"] for c in full["cases"] if c["size"] == "slow"]
    assert "search-33111-r31" in slow
    part = report("corpus", "list", "verify-")
    assert {c["name"] for c in part["cases"]} == {c["name"] for c in catalog() if c["name"].startswith("verify-")}


def test_corpus_run_default_skips_slow():
    doc = report("corpus", "run")
    validate(doc, "corpus-run")
    assert doc["passed"] is True
    names = {r["name"] for r in doc["results"]}
    assert names == {c["name"] for c in catalog() if c.get("size", "fast") == "fast"}
    named = report("corpus", "run", "bounds-222", "search-21-r2")
    assert [r["name"] for r in named["results"]] == ["bounds-222", "search-21-r2"]


def test_corpus_failure_exit_code(tmp_path):
    shutil.copy(CORPUS / "mono-222.json", tmp_path)
    wrong = {"cases": [{"name": "wrong", "command": "bounds", "tensor": "mono-222.json", "expect": {"/exact": 10}}]}
    (tmp_path / "catalog.json").write_text(json.dumps(wrong))
    proc = run("corpus", "--dir", tmp_path, "run", code=5)
    doc = json.loads(proc.stdout)
    validate(doc, "corpus-run")
    assert doc["results"][0]["mismatches"]
    assert json.loads(proc.stderr)["error"]["kind"] == "corpus-case-failed"


def test_output_file_and_jobs_env(tmp_path):
    out = tmp_path / "r.json"
    env = dict(os.environ, APOLAR_JOBS="2")
    proc = run("-o", out, "search", CORPUS / "mono-222.json", "--r", 9, env=env)
    assert proc.stdout == ""
    assert json.loads(out.read_text())["status"] == "Found"
    serial = report("-j", 1, "search", CORPUS / "mono-222.json", "--r", 9)
    assert serial["candidate"] == json.loads(out.read_text())["candidate"]


@pytest.mark.parametrize(
    "args",
    [
        ["bounds", "missing.json"],
        ["bounds"],
        ["search", CORPUS / "mono-21.json"],
        ["frobnicate"],
        ["macaulay", "exponent", "--r", "x", "--d", 2],
    ],
)
def test_parse_errors(args):
    error(*args, code=2)


def test_malformed_and_unknown_fields(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert error("bounds", bad, code=2)["kind"] == "parse"
    doc = json.loads((CORPUS / "mono-21.json").read_text())
    doc["colour"] = "red"
    bad.write_text(json.dumps(doc))
    assert "colour" in error("bounds", bad, code=2)["message"]


def test_precondition_errors():
    error("search", CORPUS / "tensor-wild-cubic.json", "--r", 3, code=3)
    error("search", CORPUS / "mono-21.json", "--r", 99, code=3)
    err = error("verify", CORPUS / "ideal-tangent.json", CORPUS / "mono-21.json", "--r", 2, code=3)
    assert err["kind"] == "dimension-mismatch"
    error("macaulay", "segment", "--n", 2, "--d", 2, "--r", 10, code=3)
    error("corpus", "run", "no-such-case", code=3)
