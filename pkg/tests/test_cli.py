import io
import json
import subprocess
import sys

import pytest
from av_reference import AV, CORPUS

from argonto.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    return code, json.loads(out)


def test_check_reports_inconsistent():
    code, doc = run_json("check", AV)
    assert code == 1 and doc["answer"] == "inconsistent" and doc["witnesses"]


def test_check_consistent():
    code, doc = run_json("check", CORPUS / "abox_only.onto")
    assert code == 0 and doc["answer"] == "consistent"


def test_accept_with_priority_override():
    code, doc = run_json("accept", AV, "--assert", "LeaveCar(PS1)", "--priority", "p2<p1")
    assert code == 0 and doc["answer"] == "accepted"
    code, doc = run_json("accept", AV, "--assert", "LeaveCar(PS1)", "--priority", "p1<p2")
    assert code == 0 and doc["answer"] == "rejected"


def test_priority_override_matches_file_edit(tmp_path):
    edited = tmp_path / "swapped.onto"
    edited.write_text(AV.read_text().replace("PRIORITY p2 < p1", "PRIORITY p1 < p2"))
    for cmd in (["extensions"], ["conclusions"], ["af"]):
        _, a, _ = run(*cmd, AV, "--priority", "p1<p2")
        _, b, _ = run(*cmd, edited)
        assert a == b


def test_empty_extensions():
    code, doc = run_json("extensions", CORPUS / "empty.onto", "--semantics", "pr")
    assert code == 0 and doc == {"semantics": "pr", "extensions": [[]]}


def test_output_is_stable():
    first = run("arguments", AV)[1]
    assert all(run("arguments", AV)[1] == first for _ in range(3))


def test_text_format():
    code, out, _ = run("accept", AV, "--assert", "LeaveCar(PS1)", "--format", "text")
    assert code == 0 and "answer: accepted" in out


def test_instance_and_draft_queries():
    _, doc = run_json("instance", AV, "--individual", "PS1", "--class", "EXISTS hitAndRun.Injury")
    assert doc["answer"] is True
    _, doc = run_json("instances-of", AV, "--concept", "TakeCriminalResponsibility")
    assert doc["answer"] == ["PS1"]
    _, doc = run_json("concepts-of", AV, "--individual", "Injury1")
    assert doc["answer"] == ["Injury", "NeedEmergencyAid"]


def test_explain_exit_codes():
    code, doc = run_json("explain", AV, "--assert", "LeaveCar(PS1)", "--norms-only")
    assert code == 0 and doc["combined"]["rules"] == ["r8", "r9"]
    code, out, err = run("explain", AV, "--assert", "~LeaveCar(PS1)")
    assert code == 1 and out == "" and "not accepted" in err
    code, _, err = run("explain", AV, "--assert", "Flying(PS1)")
    assert code == 2


def test_well_defined():
    code, doc = run_json("well-defined", AV)
    assert code == 0 and doc["passed"] is True


def test_apx_output():
    code, out, _ = run("af", AV, "--apx")
    assert code == 0
    assert sum(line.startswith("arg(") for line in out.splitlines()) == 22
    assert sum(line.startswith("att(") for line in out.splitlines()) == 14


def test_emit_files(tmp_path):
    paths = {k: tmp_path / f"{k}.json" for k in ("theory", "arguments", "af")}
    code, _, _ = run(
        "conclusions", AV,
        "--emit-theory", paths["theory"], "--emit-arguments", paths["arguments"], "--emit-af", paths["af"],
    )
    assert code == 0
    assert len(json.loads(paths["arguments"].read_text())) == 22
    assert len(json.loads(paths["af"].read_text())["defeats"]) == 14
    theory = json.loads(paths["theory"].read_text())
    assert len(theory["norms"]) == 9 and len(theory["premises"]) == 7


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "missing.onto"],
        ["accept", str(AV), "--assert", "LeaveCar(?x)"],
        ["accept", str(AV), "--assert", "LeaveCar(PS1)", "--priority", "p1<<p2"],
        ["accept", str(AV), "--assert", "LeaveCar(PS1)", "--priority", "p1<p9"],
        ["nonsense", str(AV)],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.onto"
    bad.write_text("ABOX R(a,b,c)\n")
    code, _, err = run("check", bad)
    assert code == 2 and "line 1" in err


def test_budget_exit(monkeypatch):
    assert run("arguments", AV, "--max-arguments", "5")[0] == 3
    monkeypatch.setenv("ARGONTO_BUDGET", "5")
    assert run("arguments", AV)[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "argonto", "accept", str(AV), "--assert", "~LeaveCar(PS1)", "--priority", "p1<p2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["answer"] == "accepted"
