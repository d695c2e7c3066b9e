import json

import pytest


def run_json(cli, *args):
    return json.loads(cli(*args).stdout)


def test_verify_claims(cli, validate):
    doc = run_json(cli, "verify-claims", "--primes", "3,7", "--grids", "3")
    validate(doc, "verify.schema.json")
    assert doc["result"]["all_passed"]
    again = run_json(cli, "verify-claims", "--primes", "3,7", "--grids", "3", "--threads", "4")
    assert again["result"]["checks_digest"] == doc["result"]["checks_digest"]
    assert again["manifest"]["results_digest"] == doc["manifest"]["results_digest"]


def test_verify_rejects_bad_prime(cli):
    proc = cli("verify-claims", "--primes", "2", expect=2)
    assert "InvalidArgument" in proc.stderr


def test_search_corner_sat(cli, validate):
    doc = run_json(cli, "search", "--kind", "corner-sat", "--p", "3", "--mode", "exact")
    validate(doc, "search.schema.json")
    res = doc["result"]
    assert res["best_size"] == 3
    assert res["status"] == "ProvedOptimal"
    assert len(res["points"]) == 3


def test_search_free_max_on_grid(cli, validate):
    doc = run_json(cli, "search", "--kind", "corner-free-max", "--n", "4", "--mode", "exact")
    validate(doc, "search.schema.json")
    assert doc["result"]["best_size"] == 6
    assert doc["result"]["density"] == "3/8"


def test_checkpoint_resume(cli, validate, tmp_path):
    cp = tmp_path / "cp.json"
    first = run_json(cli, "search", "--kind", "corner-sat", "--p", "7", "--mode", "bb", "--budget", "20",
                     "--checkpoint", cp)
    validate(first, "search.schema.json")
    assert not first["result"]["complete"]
    validate(json.loads(cp.read_text()), "checkpoint.schema.json")
    done = run_json(cli, "search", "--resume", cp)
    validate(done, "search.schema.json")
    assert done["result"]["complete"]
    assert done["result"]["best_size"] == 6


def test_corrupt_checkpoint(cli, tmp_path):
    cp = tmp_path / "bad.json"
    cp.write_text('{"format": "cornerlab-checkpoint", "version": 1')
    cli("search", "--resume", cp, expect=3)


def test_audit_random(cli, validate):
    doc = run_json(cli, "audit-coloring", "--random", "--p", "7", "--seed", "3", "--a", "1", "--b", "2")
    validate(doc, "audit.schema.json")
    res = doc["result"]
    assert res["decomposition"]["identity_holds"]
    assert res["decomposition"]["residual"] == "0"
    counts = res["mono_corner_counts"]
    assert counts["sigma_R"] + counts["sigma_B"] > 0


def test_audit_from_file(cli, validate, tmp_path):
    coloring = {"n": 2, "r": 2, "colors": [0, 1, 1, 0]}
    validate(coloring, "coloring.schema.json")
    path = tmp_path / "c.json"
    path.write_text(json.dumps(coloring))
    doc = run_json(cli, "audit-coloring", "--input", path)
    validate(doc, "audit.schema.json")
    assert doc["result"]["axis_corner"]["found"] is False


def test_audit_errors(cli, tmp_path):
    proc = cli("audit-coloring", "--random", "--p", "7", "--a", "1", "--b", "3", expect=2)
    assert "NotQuadraticResidue" in proc.stderr
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 3, "r": 2, "colors": [0, 1, 2, 0, 0, 0, 0, 0, 0]}')
    proc = cli("audit-coloring", "--input", bad, expect=3)
    assert "colors[2]" in proc.stderr
    cli("audit-coloring", "--input", tmp_path / "missing.json", expect=3)


def test_density_table(cli, validate, tmp_path):
    csv = tmp_path / "t.csv"
    doc = run_json(cli, "density-table", "--kind", "corner", "--sizes", "2,3,4", "--csv", csv)
    validate(doc, "density.schema.json")
    assert [r["max_found"] for r in doc["result"]["rows"]] == [2, 4, 6]
    lines = csv.read_text().splitlines()
    assert lines[0] == "size,kind,max_found,proved,density,witness"
    assert len(lines) == 4


@pytest.mark.parametrize("args", [["search"], ["search", "--kind", "nope", "--p", "5"], ["frobnicate"]])
def test_usage_errors(cli, args):
    cli(*args, expect=2)
