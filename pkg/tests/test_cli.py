"""Tests for the command-line interface: exit codes, schemas, determinism."""
from __future__ import annotations

import io
import json
import sys

import pytest

from starcob.cli import main


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_json(capsys):
    code, out, _ = _run(["build", "--n", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "starcob/1"
    assert doc["config"]["N"] == 3
    assert doc["config"]["seed"] == 0
    assert len(doc["generators"]["A"]) == 9
    assert len(doc["generators"]["B"]) == 9
    assert doc["grading-table"]["V0"]["m"] == 4
    assert doc["grading-table"]["V4"]["m"] == -2


def test_small_n_is_config_error(capsys):
    code, _, err = _run(["build", "--n", "2"], capsys)
    assert code == 2
    assert "N > 2" in err
    code, _, _ = _run(["verify", "ainfty-a", "--n", "1"], capsys)
    assert code == 2
    code, _, _ = _run(["cohomology", "--n", "2"], capsys)
    assert code == 2


def test_verify_clean_sweeps(capsys):
    code, out, _ = _run(["verify", "ainfty-a", "--n", "3", "--max-arity", "7", "--max-len", "8"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["violation-count"] == 0
    code, out, _ = _run(["verify", "ainfty-b", "--n", "3"], capsys)
    assert code == 0
    code, out, _ = _run(["verify", "homotopy", "--n", "3", "--max-len", "5"], capsys)
    assert code == 0
    code, out, _ = _run(["verify", "grading", "--n", "3", "--max-arity", "6", "--max-len", "8"], capsys)
    assert code == 0
    code, out, _ = _run(["verify", "arities", "--n", "4"], capsys)
    assert code == 0


def test_verify_fault_exits_one(capsys):
    code, out, _ = _run(
        ["verify", "ainfty-a", "--n", "3", "--inject-fault", "drop-mu2N"], capsys
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["violation-count"] > 0
    assert doc["violations"][0]["algebra"] == "A"
    code, _, _ = _run(
        ["verify", "homotopy", "--n", "3", "--max-len", "4", "--inject-fault", "break-h"],
        capsys,
    )
    assert code == 1


def test_unknown_fault_is_config_error(capsys):
    code, _, err = _run(["verify", "ainfty-a", "--n", "3", "--inject-fault", "nope"], capsys)
    assert code == 2
    assert "fault" in err


def test_reports_are_byte_identical(capsys):
    args = ["verify", "ainfty-a", "--n", "3", "--seed", "11"]
    _, out1, _ = _run(args, capsys)
    _, out2, _ = _run(args, capsys)
    assert out1 == out2
    args = ["cohomology", "--algebra", "B", "--n", "3", "--n-max", "5"]
    _, out1, _ = _run(args, capsys)
    _, out2, _ = _run(args, capsys)
    assert out1 == out2


def test_seed_recorded(capsys):
    _, out, _ = _run(["verify", "arities", "--n", "3", "--seed", "99"], capsys)
    assert json.loads(out)["config"]["seed"] == 99


def test_cohomology_table_json(capsys):
    code, out, _ = _run(["cohomology", "--algebra", "A", "--n", "3", "--n-max", "7"], capsys)
    assert code == 0
    doc = json.loads(out)
    rows = doc["rows"]
    assert len(rows) == 10
    hits = [r for r in rows if r.get("dim", 0) > 0]
    assert len(hits) == 1
    assert (hits[0]["n"], hits[0]["j"], hits[0]["dim"]) == (6, -2, 1)
    assert hits[0]["witnesses"]
    assert "distinguished-cocycle" in doc


def test_cohomology_csv(capsys):
    code, out, _ = _run(
        ["cohomology", "--algebra", "B", "--n", "3", "--n-max", "4", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "model,N,n,j,dim,witnesses"
    assert len(lines) == 5
    assert any(line.startswith("B,3,3,-2,1,") for line in lines)


def test_cohomology_truncation_reported_per_cell(capsys):
    code, out, _ = _run(
        ["cohomology", "--algebra", "A", "--n", "3", "--n-max", "12", "--j", "-4", "--trunc", "1"],
        capsys,
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    errored = [r for r in rows if "error" in r]
    assert errored
    assert all("truncation" in r["error"] for r in errored)


def test_dump_strings_block_marker(capsys):
    code, out, _ = _run(
        ["dump", "strings", "--algebra", "A", "--n", "3", "--max-len", "2", "--format", "text"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines
    assert all("|" in line for line in lines)


def test_dump_basis_and_special(capsys):
    code, out, _ = _run(["dump", "basis", "--algebra", "B", "--n", "3", "--max-len", "1"], capsys)
    assert code == 0
    items = json.loads(out)["items"]
    assert len(items) == 9
    code, out, _ = _run(["dump", "special", "--algebra", "A", "--n", "3", "--format", "text"], capsys)
    assert code == 0
    assert out.startswith("U4 = ")
    code, out, _ = _run(["dump", "special", "--algebra", "B", "--n", "4", "--format", "text"], capsys)
    assert code == 0
    assert out.startswith("U0 = ")


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("STARCOB_THREADS", "3")
    code, out_threaded, _ = _run(["verify", "ainfty-b", "--n", "3"], capsys)
    assert code == 0
    monkeypatch.setenv("STARCOB_THREADS", "junk")
    code, _, err = _run(["verify", "ainfty-b", "--n", "3"], capsys)
    assert code == 2
    assert "STARCOB_THREADS" in err
    monkeypatch.setenv("STARCOB_THREADS", "0")
    code, _, _ = _run(["verify", "ainfty-b", "--n", "3"], capsys)
    assert code == 2
    monkeypatch.delenv("STARCOB_THREADS")
    code, out_plain, _ = _run(["verify", "ainfty-b", "--n", "3"], capsys)
    assert code == 0
    assert out_threaded == out_plain


def test_verify_text_format_streams_violations(capsys):
    code, out, _ = _run(
        ["verify", "ainfty-a", "--n", "3", "--inject-fault", "drop-mu2N:2", "--format", "text"],
        capsys,
    )
    assert code == 1
    lines = out.strip().splitlines()
    assert lines[0].startswith("verify ainfty-a:")
    # Each remaining line is a self-contained JSON violation record.
    for line in lines[1:]:
        rec = json.loads(line)
        assert rec["algebra"] == "A"
