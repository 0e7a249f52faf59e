"""Command-line surface: generation, validation, checking, reports.

Everything runs in-process through ``main(argv)``; exit codes follow the
contract 0 = no failures, 1 = some check failed (or, under --strict, was
inapplicable), 2 = usage or input error."""

from __future__ import annotations

import json

import pytest

from finext.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
    out = capsys.readouterr()
    return code, out.out


@pytest.fixture()
def set_file(tmp_path, capsys):
    path = tmp_path / "set3.json"
    code, _ = run(capsys, "gen", "--variety", "set", "--max-carrier", "3", "--output", str(path))
    assert code == 0
    return str(path)


@pytest.fixture()
def chain_file(tmp_path, capsys):
    path = tmp_path / "chain.json"
    code, _ = run(
        capsys,
        "gen", "--variety", "poset", "--max-carrier", "1", "--include-empty",
        "--output", str(path),
    )
    assert code == 0
    return str(path)


def test_gen_reports_counts_and_writes_loadable_files(set_file, chain_file, capsys):
    doc = json.load(open(set_file))
    assert doc["variety"] == "set"
    assert len(doc["algebras"]) == 4
    chain = json.load(open(chain_file))
    assert len(chain["algebras"]) == 2
    code, out = run(capsys, "validate", set_file)
    assert code == 0
    assert "valid set category file" in out
    assert "4 objects" in out and "60 morphisms" in out


def test_gen_connected_only_applies_to_posets(tmp_path, capsys):
    code, _ = run(
        capsys,
        "gen", "--variety", "set", "--connected", "--max-carrier", "2",
        "--output", str(tmp_path / "x.json"),
    )
    assert code == 2


def test_validate_rejects_malformed_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"algebras": "nope"}')
    code, _ = run(capsys, "validate", str(bad))
    assert code == 2
    missing = tmp_path / "missing.json"
    code, _ = run(capsys, "validate", str(missing))
    assert code == 2


def test_check_whole_category_both_modes(set_file, capsys):
    code, out = run(capsys, "check", set_file, "--mode", "extensive")
    assert code == 0
    assert "summary: 61 pass, 0 fail, 0 inapplicable (61 checks)" in out
    code, out = run(capsys, "check", set_file, "--mode", "coextensive")
    assert code == 1


def test_check_single_morphism_emits_both_routes(set_file, capsys):
    code, out = run(capsys, "check", set_file, "--morphism", "s2>s3#0001", "--mode", "extensive")
    assert code == 0
    assert "s2>s3#0001/E1" in out
    assert "s2>s3#0001/E2" in out
    assert "s2>s3#0001/extensive" in out
    assert "(3 checks)" in out


def test_check_unknown_morphism_is_a_usage_error(set_file, capsys):
    code, _ = run(capsys, "check", set_file, "--morphism", "bogus", "--mode", "extensive")
    assert code == 2


def test_check_object_identity_and_srp_paths(set_file, capsys):
    code, out = run(capsys, "check", set_file, "--object", "s1", "--mode", "coextensive")
    assert code == 0
    assert "s1/identity-coextensive" in out
    code, out = run(capsys, "check", set_file, "--object", "s0", "--srp", "2")
    assert code == 1
    assert "s0/srp-2" in out and "no-grid" in out


def test_two_point_chain_report_carries_the_frozen_square(chain_file, tmp_path, capsys):
    rep = tmp_path / "report.json"
    code, out = run(
        capsys, "check", chain_file, "--mode", "coextensive", "--report", str(rep)
    )
    assert code == 1
    assert "P0>P0#0000/coextensive" in out
    assert "square-not-pushout" in out
    doc = json.load(open(rep))
    ids = [e["id"] for e in doc["checks"]]
    assert ids == sorted(ids)
    assert doc["summary"] == {"pass": 2, "fail": 2, "inapplicable": 0, "total": 4}
    entry = next(e for e in doc["checks"] if e["id"] == "P0>P0#0000/coextensive")
    assert entry["witness"] == {
        "kind": "square-not-pushout",
        "morphism": "P0>P0#0000",
        "top": ["P0>P0#0000", "P0>P0#0000"],
        "bottom": ["P0>P0#0000", "P0>P1#0000"],
        "verticals": ["P0>P0#0000", "P0>P1#0000"],
        "side": "right",
    }
    assert "category/coextensive" in ids


def test_srp_command_scans_every_object(set_file, capsys):
    code, out = run(capsys, "srp", set_file)
    assert code == 1  # the empty set has no grid
    assert "s0/srp-2" in out
    assert "(4 checks)" in out


def test_relcalc_command_counts_and_strict_mode(set_file, capsys):
    code, out = run(capsys, "relcalc", set_file)
    assert code == 0
    assert "summary: 14 pass, 0 fail, 1 inapplicable (15 checks)" in out
    code, _ = run(capsys, "relcalc", set_file, "--strict")
    assert code == 1  # strict escalates the honest inapplicable


def test_report_digest_is_stable_across_runs(set_file, tmp_path, capsys):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "check", set_file, "--mode", "extensive", "--report", str(r1))[0] == 0
    assert run(capsys, "check", set_file, "--mode", "extensive", "--report", str(r2))[0] == 0
    d1, d2 = json.load(open(r1)), json.load(open(r2))
    assert d1["digest"] == d2["digest"]

    def strip(v):
        if isinstance(v, dict):
            return {k: strip(x) for k, x in v.items() if k != "timing_ms"}
        if isinstance(v, list):
            return [strip(x) for x in v]
        return v

    assert strip(d1) == strip(d2)


def test_verify_paper_single_statement(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out = run(capsys, "verify-paper", "--suite", "prop-composite", "--report", str(rep))
    assert code == 0
    doc = json.load(open(rep))
    assert doc["summary"]["total"] == 1
    assert doc["checks"][0]["id"] == "finset3/prop-composite"


def test_verify_paper_rejects_unknown_ids(capsys):
    code, _ = run(capsys, "verify-paper", "--suite", "nope")
    assert code == 2


def test_verify_paper_is_deterministic_and_jobs_invariant(tmp_path, capsys):
    reports = [tmp_path / f"r{i}.json" for i in range(3)]
    a = run(capsys, "verify-paper", "--suite", "3", "--seed", "7", "--report", str(reports[0]))
    b = run(capsys, "verify-paper", "--suite", "3", "--seed", "7", "--report", str(reports[1]))
    c = run(
        capsys,
        "verify-paper", "--suite", "3", "--seed", "7", "--jobs", "4",
        "--report", str(reports[2]),
    )
    assert a[0] == b[0] == c[0] == 0
    docs = [json.load(open(r)) for r in reports]
    assert docs[0]["digest"] == docs[1]["digest"] == docs[2]["digest"]
    assert docs[0]["summary"]["total"] == 23


def test_input_may_be_positional_or_flag_but_not_conflicting(set_file, capsys):
    code_pos, _ = run(capsys, "validate", set_file)
    code_flag, _ = run(capsys, "validate", "--input", set_file)
    assert code_pos == 0 and code_flag == 0
    code, _ = run(capsys, "validate", set_file, "--input", "/tmp/other.json")
    assert code == 2
