from __future__ import annotations

import json
import subprocess
import sys

import pytest

from vdc.cli import main
from vdc.evaluator import eval_global
from vdc.formats import load_universe
from vdc.parser import parse_term


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def upath(sample_dir):
    return str(sample_dir / "u.vdc")


def test_eval_constant(capsys, upath):
    assert run(capsys, "eval", "-u", upath, "--at", "i1", "'a") == (0, "a\n", "")


def test_eval_improper(capsys, upath):
    code, out, _ = run(capsys, "eval", "-u", upath, "--at", "i1", "desc y:T. y=y")
    assert (code, out) == (2, "improper: {a, b}\n")


def test_eval_undefined(capsys, upath):
    code, out, _ = run(capsys, "eval", "-u", upath, "--at", "i3", "h")
    assert code == 2 and out.startswith("undefined")


def test_eval_all_matches_global(capsys, upath):
    code, out, _ = run(capsys, "eval", "-u", upath, "--at", "all", "'a")
    assert code == 0
    assert out.splitlines() == ["i1: a", "i2: a", "i3: a", "graph: {i1: a, i2: a, i3: a}"]
    g = eval_global(parse_term("'a"), load_universe(upath))
    assert out.splitlines()[-1] == f"graph: {g}"


def test_eval_errors(capsys, upath):
    code, _, err = run(capsys, "eval", "-u", upath, "--at", "i1", "(h")
    assert code == 1 and "1:3" in err
    code, _, err = run(capsys, "eval", "-u", upath, "--at", "i1", "('a 'b)")
    assert code == 1 and "sort mismatch" in err
    code, _, err = run(capsys, "eval", "-u", upath, "--at", "i9", "'a")
    assert code == 1


def test_eval_structured(capsys, upath):
    code, out, _ = run(capsys, "eval", "-u", upath, "--at", "i1", "--format", "structured",
                       "desc y:T. y=y")
    record = json.loads(out)
    assert code == 2
    assert list(record) == ["kind", "event", "status", "candidates"]
    assert record["candidates"] == ["a", "b"]


@pytest.mark.parametrize("suite", ["taxonomy", "rules", "eta", "figure3", "layers"])
def test_check_suites_pass_on_sample(capsys, upath, suite):
    code, out, _ = run(capsys, "check", "-u", upath, suite, "--seed", "3")
    assert code == 0, out
    assert all(line.startswith(("PASS", "SKIP")) for line in out.splitlines())


def test_check_rules_reports_epsilon_route(capsys, upath):
    _, out, _ = run(capsys, "check", "-u", upath, "rules", "--count", "40")
    assert any("rule4 == rule1" in line and line.startswith("PASS") for line in out.splitlines())


def test_check_seed_from_environment(capsys, upath, monkeypatch):
    monkeypatch.setenv("VDC_SEED", "11")
    first = run(capsys, "check", "-u", upath, "rules", "--count", "30")
    second = run(capsys, "check", "-u", upath, "rules", "--count", "30", "--seed", "11")
    assert first == second


def test_check_slice_chain_failure_has_witness(capsys, tmp_path):
    bad = tmp_path / "bad.vdc"
    bad.write_text("events i1\natoms a\nset H = {a}\ntype T = {a q}\n")
    code, out, _ = run(capsys, "check", "-u", str(bad), "figure3")
    assert code == 1
    assert "FAIL  T <= H" in out and "witness: q" in out


def test_concepts(capsys, upath):
    code, out, _ = run(capsys, "concepts", "-u", upath, "--scheme", "typed:T", "--declared-only")
    assert code == 0
    assert "{i1}  ->  {[i1, a], [i1, b]}" in out
    assert "h: recovered {i1: a, i2: b}" in out


def test_layers(capsys, upath):
    code, out, _ = run(capsys, "layers", "-u", upath, "0:h='a", "1:'a in h")
    assert code == 0
    assert out.splitlines() == ["layer 0 (data base):", "  a", "  b",
                                "layer 1 (knowledge base):", "  {a}",
                                "layer 2 (metaknowledge base):", "  {{a}, {a, b}}"]
    code, _, err = run(capsys, "layers", "-u", upath, "2:true")
    assert code == 1 and "exceeds maximum depth" in err
    assert run(capsys, "layers", "-u", upath, "--max-depth", "3", "2:true")[0] == 0


def test_replay(capsys, upath, sample_dir):
    script = sample_dir / "s.txt"
    script.write_text("@i1 +a\n@i2 +b\n")
    code, out, _ = run(capsys, "replay", "-u", upath, str(script))
    lines = out.splitlines()
    assert code == 0
    assert len([line for line in lines if line.lstrip()[:1].isdigit()]) == 2
    assert "final live: {a, b}" in out and "taxonomy: pass" in out


def test_replay_failure_names_the_step(capsys, upath, sample_dir):
    script = sample_dir / "s.txt"
    script.write_text("@i1 +a\n@i2 -b\n@i3 +b\n")
    code, out, err = run(capsys, "replay", "-u", upath, str(script))
    assert code == 1
    assert "step 2" in err
    rows = [line for line in out.splitlines() if line.lstrip()[:1].isdigit()]
    assert [r.split()[0] for r in rows] == ["1", "2"]


def test_replay_structured_matches_table(capsys, upath, sample_dir):
    script = sample_dir / "s.txt"
    script.write_text("@i1 +a\n@i2 +b\n@i3 -a\n")
    _, table, _ = run(capsys, "replay", "-u", upath, str(script))
    _, structured, _ = run(capsys, "replay", "-u", upath, str(script), "--format", "structured")
    records = [json.loads(line) for line in structured.splitlines()]
    steps = [r for r in records if r["kind"] == "step"]
    rows = [line.split() for line in table.splitlines() if line.lstrip()[:1].isdigit()]
    assert [(str(r["step"]), r["event"]) for r in steps] == [(row[0], row[1]) for row in rows]
    assert records[-1] == {"kind": "final", "live": ["b"], "taxonomy": "pass"}


def test_parse(capsys, upath):
    assert run(capsys, "parse", "\\x:T. x") == (0, "(\\x:T. x)\n", "")
    code, out, _ = run(capsys, "parse", "-u", upath, "{h:T | h='a}")
    assert out.strip().endswith(": [T]")


def test_module_entry_point(upath):
    proc = subprocess.run([sys.executable, "-m", "vdc", "eval", "-u", upath, "--at", "i1", "'a"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "a\n"
