from __future__ import annotations

import io
import json
import subprocess
import sys

import jsonschema
import pytest

from wps_delpezzo import cli
from wps_delpezzo.obstructions import BLSummary, NSummary, RealTuple


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_json():
    code, out, _ = run("classify", "2", "3", "4", "5", "--degree", "12", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, cli.RECORD_SCHEMA)
    assert doc["index"] == 2 and doc["class"]["special"] is None
    assert {"thm-bgn"} <= {h["tag"] for h in doc["class"]["sporadic"]}


def test_classify_by_index():
    code, out, _ = run("classify", "5", "4", "3", "2", "--index", "2", "--format", "json")
    assert code == 0 and json.loads(out)["degree"] == 12


def test_inconsistent_degree_and_index():
    code, _, err = run("classify", "2", "3", "4", "5", "--degree", "12", "--index", "3")
    assert code == 1 and "inconsistent" in err


def test_missing_degree():
    code, _, err = run("classify", "2", "3", "4", "5")
    assert code == 1


def test_strict_fano():
    assert run("classify", "1", "2", "3", "4", "--degree", "10")[0] == 1
    assert run("obstructions", "1", "2", "3", "4", "--degree", "10")[0] == 1
    code, out, _ = run("check", "2", "4", "6", "7", "--degree", "20", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["index"] == -1 and doc["well_formed"] is False
    assert run("check", "1", "2", "3", "4", "--degree", "10", "--strict-fano")[0] == 1


def test_domain_errors_exit_1():
    code, _, err = run("classify", "3", "6", "7", "11", "--degree", "25")
    assert code == 1 and "not well-formed" in err
    assert run("invariants", "1", "2", "3", "7", "--degree", "12")[0] == 1


def test_malformed_arguments():
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("classify", "1", "2", "x", "4", "--degree", "5")[0] == 1
    assert run("classify", "0", "2", "3", "4", "--degree", "5")[0] == 1
    assert run("verify-bl", "--n", "3..1")[0] == 1
    assert run("reproduce", "table-9", "--max-weight", "5")[0] == 1


def test_csv_columns():
    code, out, _ = run("enumerate", "--index", "1", "--max-weight", "5", "--format", "csv", "--invariants")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == ",".join(cli.CSV_COLUMNS)
    assert len(lines) == 7
    row = dict(zip(cli.CSV_COLUMNS, lines[3].split(",")))
    assert row["a0"] == "1" and row["d"] == "6" and row["I"] == "1" and row["ke_status"] == "Exists"


def test_enumerate_jsonl_schema():
    code, out, _ = run("enumerate", "--index", "2", "--max-weight", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line == line.rstrip() for line in lines)
    for line in lines:
        jsonschema.validate(json.loads(line), cli.RECORD_SCHEMA)


def test_invariants_table():
    code, out, _ = run("invariants", "2", "3", "4", "5", "--degree", "12")
    assert code == 0
    assert "DependsOnMember" in out and "8/15" in out


def test_reproduce_exit_codes():
    code, out, _ = run("reproduce", "thm-kollar-johnson", "--max-weight", "40")
    assert code == 0 and "missing: 0, extra: 0" in out
    code, out, _ = run("reproduce", "thm-i2", "--max-weight", "20", "--format", "json")
    assert code == 2
    assert json.loads(out)["extra"] == [[2, 3, 4, 5, 12], [3, 4, 5, 7, 17]]


def test_verify_bl():
    code, out, _ = run("verify-bl", "--n", "1..6", "--samples", "300", "--seed", "42", "--noalpha")
    assert code == 0 and "counterexamples: 0" in out


def test_verify_bl_counterexample_exit(monkeypatch):
    bad = NSummary(3, samples=1, counterexamples=[RealTuple((1, 1, 1, 1), 1)])

    def fake(n_range, samples, seed):
        return BLSummary(seed, {3: bad})

    monkeypatch.setattr(cli, "verify_theorem_bl", fake)
    code, out, _ = run("verify-bl", "--n", "3", "--samples", "1")
    assert code == 3 and "counterexamples: 1" in out


def test_family_data():
    code, out, _ = run("family-data", "--m", "1..3", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["L.-K"] == "1/14" and all(r["identities_hold"] for r in rows)


@pytest.mark.parametrize("argv", [
    ["enumerate", "--index", "3", "--max-weight", "15", "--format", "jsonl"],
    ["verify-bl", "--n", "1..3", "--samples", "200", "--seed", "9", "--format", "json"],
    ["invariants", "3", "4", "5", "7", "--degree", "17", "--format", "csv"],
])
def test_byte_identical_subprocess(argv):
    cmd = [sys.executable, "-m", "wps_delpezzo", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_console_entry_point_exit_code():
    p = subprocess.run([sys.executable, "-m", "wps_delpezzo", "classify", "1", "2", "3", "4", "--degree", "10"],
                       capture_output=True, text=True)
    assert p.returncode == 1 and "error" in p.stderr
