from __future__ import annotations

import json

import pytest

from extklr import cli
from extklr.cli import QuiverError, Report, emit, main, parse_dimvec, parse_quiver


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# inputs


def test_parse_quiver_examples():
    a2 = parse_quiver('{"vertices":["i","j"],"arrows":[["i","j"]]}')
    assert a2.h("i", "j") == 1 and a2.h("j", "i") == 0
    kr = parse_quiver('{"vertices":["i","j"],"arrows":[["i","j"],["i","j"]]}')
    assert kr.h("i", "j") == 2
    assert parse_quiver('{"vertices":["i"]}').arrows == ()


@pytest.mark.parametrize("text,message", [
    ('{"vertices":["i","j"],"arrows":[["i","i"]]}', "loop arrow"),
    ('{"vertices":["i","i"],"arrows":[]}', "duplicate vertex"),
    ('{"vertices":["i"', "malformed quiver"),
    ('{"arrows":[]}', "malformed quiver"),
    ('{"vertices":["i"],"arrows":[["i","k"]]}', "unknown vertex"),
    ('{"vertices":["i","j"],"arrows":[["i"]]}', "malformed quiver"),
])
def test_parse_quiver_errors(text, message):
    with pytest.raises(QuiverError, match=message):
        parse_quiver(text)


def test_parse_dimvec():
    q = parse_quiver('{"vertices":["i","j"],"arrows":[["i","j"]]}')
    assert parse_dimvec("i=2,j=1", q) == {"i": 2, "j": 1}
    assert parse_dimvec("j=1, i=0", q) == {"j": 1}
    with pytest.raises(QuiverError, match="unknown vertex"):
        parse_dimvec("k=1", q)
    with pytest.raises(QuiverError, match="malformed"):
        parse_dimvec("i2", q)


def test_load_quiver_file(tmp_path, capsys):
    path = tmp_path / "a2.json"
    path.write_text('{"vertices":["i","j"],"arrows":[["i","j"]]}')
    assert cli.load_quiver(str(path)).h("i", "j") == 1
    assert cli.load_quiver(None).vertices == ("i",)
    code, _, err = run(capsys, "verify", "relations", "--quiver", str(tmp_path / "missing.json"))
    assert code == 2 and "unknown quiver" in err


# ---------------------------------------------------------------------------
# exit codes and reports


def test_cyclotomic_summary(capsys):
    code, out, _ = run(capsys, "verify", "cyclotomic", "--n", "2", "--N", "2")
    assert code == 0
    assert "note: dim 4, pass" in out


def test_relations_one_vertex_n3(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--quiver", "one-vertex", "--n", "3")
    assert code == 0
    assert "FAIL" not in out and out.rstrip().endswith("pass")


def test_degree_dim_gamma1(capsys):
    code, out, _ = run(capsys, "verify", "degree-dim", "--quiver", "gamma1", "--n", "3")
    assert code == 0 and "FAIL" not in out


def test_basis_check_suite(capsys):
    code, out, _ = run(capsys, "verify", "basis-check", "--quiver", "i->j", "--dimvec", "i=1,j=1")
    assert code == 0 and "3 cases, 3 passed" in out


def test_out_of_range_parameters_exit_2(capsys):
    code, _, err = run(capsys, "verify", "cyclotomic", "--n", "9")
    assert code == 2 and "--n must be between" in err
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_empty_suite_prints_zero_cases_and_is_an_error(capsys, monkeypatch):
    monkeypatch.setitem(cli.SUITES, "relations", lambda args: [])
    code, out, err = run(capsys, "verify", "relations")
    assert out.splitlines()[0].startswith("suite relations")
    assert "0 cases" in out
    assert code == 2 and "no cases" in err


def test_failing_case_exits_1_with_witness(capsys, monkeypatch):
    cases = [("ok", "always holds", lambda: (True, "")), ("bad", "never holds", lambda: (False, "the witness"))]
    monkeypatch.setitem(cli.SUITES, "relations", lambda args: cases)
    code, out, _ = run(capsys, "verify", "relations")
    assert code == 1
    assert "FAIL bad [never holds]" in out and "witness: the witness" in out
    assert "2 cases, 1 passed, 1 failed: fail" in out


def test_crashing_case_is_a_failure(capsys, monkeypatch):
    def boom():
        raise ZeroDivisionError("boom")
    monkeypatch.setitem(cli.SUITES, "relations", lambda args: [("crash", "c", boom)])
    code, out, _ = run(capsys, "verify", "relations")
    assert code == 1 and "ZeroDivisionError: boom" in out


def test_machine_report_schema(capsys):
    code, out, _ = run(capsys, "verify", "cyclotomic", "--n", "2", "--N", "2", "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"suite", "params", "cases", "summary"}
    assert doc["suite"] == "cyclotomic"
    assert doc["params"]["n"] == 2 and doc["params"]["N"] == 2
    for case in doc["cases"]:
        assert set(case) == {"id", "cite", "status", "witness"}
        assert case["cite"]
    assert doc["summary"]["status"] == "pass"


def test_text_and_machine_reports_agree(capsys):
    _, text, _ = run(capsys, "verify", "sn-action", "--n", "2")
    _, machine, _ = run(capsys, "verify", "sn-action", "--n", "2", "--format", "machine")
    doc = json.loads(machine)
    assert [c["id"] for c in doc["cases"]] == [line.split(" [")[0][5:] for line in text.splitlines()[1:-1]]


def test_runs_are_byte_deterministic(capsys):
    argv = ("verify", "pbw", "--n", "2", "--count", "5", "--seed", "7", "--format", "machine")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    _, c, _ = run(capsys, "verify", "pbw", "--n", "2", "--count", "5", "--seed", "8", "--format", "machine")
    assert json.loads(c)["summary"]["status"] == "pass"


def test_emit_empty_report():
    text = emit(Report("demo", {"n": 1}))
    assert text.splitlines()[0] == "suite demo n=1"
    assert "0 cases" in text


# ---------------------------------------------------------------------------
# compute


def test_compute_schubert_table(capsys):
    code, out, _ = run(capsys, "compute", "schubert", "--n", "2", "--k", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert sum(line.startswith("S{1}") for line in lines) == 2
    _, again, _ = run(capsys, "compute", "schubert", "--n", "2", "--k", "1")
    assert again == out


def test_compute_schubert_machine(capsys):
    _, out, _ = run(capsys, "compute", "schubert", "--n", "2", "--k", "1", "--format", "machine")
    doc = json.loads(out)
    assert doc["n"] == 2 and len(doc["table"]) == 4


def test_compute_dims_and_homology(capsys):
    code, out, _ = run(capsys, "compute", "dims", "--n", "2", "--N", "2")
    assert code == 0 and out.rstrip().endswith("total 4")
    code, out, _ = run(capsys, "compute", "homology", "--n", "1", "--N", "2", "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["H0_total"] == 2 and doc["higher_zero"]
    code, out, _ = run(capsys, "compute", "homology", "--space", "EPol", "--n", "2", "--N", "3")
    assert code == 0 and "H0 total 6" in out
