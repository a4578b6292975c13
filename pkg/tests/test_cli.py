import copy
import json
import random
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings

from ckgraph.checker import verify_report
from ckgraph.cli import main
from ckgraph.presentations import AdjacencyMatrix, classify_input, serialize
from ckgraph.report import CHECKS, build_report, report_schema
from conftest import graphs, random_presentation

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOOD = sorted(p for p in CORPUS.iterdir() if p.name != "bad.ckg")


def run(*args):
    return subprocess.run([sys.executable, "-m", "ckgraph", *args], cwd=CORPUS,
                          capture_output=True, text=True, timeout=120)


def analyze(name, *extra):
    r = run("analyze", name, "--json", *extra)
    assert r.returncode == 0, r.stderr
    return json.loads(r.stdout)


def values(report):
    return {k: v["value"] for k, v in report["verdicts"].items()}


def test_two_loop_vertex():
    v = values(analyze("o2.ckg", "--check", "all"))
    assert (v["purely_infinite"], v["stable"], v["af"]) == ("yes", "no", "no")


def test_periodic_chain():
    v = values(analyze("chain.period", "--check", "stable,pi"))
    assert v == {"stable": "yes", "unital_quotient": "no", "purely_infinite": "yes"}


def test_parse_error_exit_code():
    r = run("analyze", "bad.ckg")
    assert r.returncode == 1
    assert "line 2, column 10" in r.stderr


def test_usage_errors_exit_one(capsys):
    assert main(["analyze", str(CORPUS / "o2.ckg"), "--check", "nonsense"]) == 1
    assert main(["analyze", str(CORPUS / "missing.ckg")]) == 1
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 1


def test_unsupported_only_exit_two(capsys):
    assert main(["analyze", str(CORPUS / "o2.ckg"), "--check", "shift"]) == 2
    assert main(["analyze", str(CORPUS / "o2.ckg"), "--check", "shift,af"]) == 0


def test_human_summary(capsys):
    assert main(["analyze", str(CORPUS / "loop.ckg")]) == 0
    out = capsys.readouterr().out
    assert "purely_infinite" in out and "NO" in out


@pytest.mark.parametrize("path", GOOD, ids=lambda p: p.name)
def test_reports_are_deterministic_valid_and_verify(path, tmp_path):
    a, b = run("analyze", path.name, "--json"), run("analyze", path.name, "--json")
    assert a.returncode == 0 and a.stdout == b.stdout
    report = json.loads(a.stdout)
    jsonschema.validate(report, report_schema())
    out = tmp_path / "r.json"
    out.write_text(a.stdout)
    v = run("verify", str(out))
    assert v.returncode == 0, v.stdout
    assert v.stdout.count("PASS") == len(report["verdicts"])


def tamper(report, key, fn):
    r = copy.deepcopy(report)
    fn(r["verdicts"][key])
    return r


def failed(report):
    return {k for k, ok, _ in verify_report(report) if not ok}


def test_checker_rejects_tampering():
    o2 = analyze("o2.ckg")
    assert not failed(o2)

    def flip(v):
        v["value"] = "yes" if v["value"] == "no" else "no"
    assert "af" in failed(tamper(o2, "af", flip))
    assert "graph_trace" in failed(tamper(o2, "graph_trace", lambda v: v["certificate"]["y"].__setitem__(0, "-5")))

    path3 = analyze("path3.ckg")

    def skew(v):
        v["certificate"]["values"]["v1"] = "1/2"
    assert "graph_trace" in failed(tamper(path3, "graph_trace", skew))

    loop = analyze("loop.ckg")
    assert "purely_infinite" in failed(tamper(loop, "purely_infinite", lambda v: v["certificate"].update(H=["v"])))
    assert "hereditary_saturated_lattice" in failed(
        tamper(loop, "hereditary_saturated_lattice", lambda v: v["certificate"]["sets"].pop()))

    tree = analyze("binary_tree.period")

    def bend(v):
        v["certificate"]["vector"] = {"b": "-1"}
    assert "stable" in failed(tamper(tree, "stable", bend))

    ray = analyze("ray.period")
    assert "stable" in failed(tamper(ray, "stable", lambda v: v["certificate"]["L"].pop()))

    gold = analyze("golden.mtx")

    def shrink(v):
        v["certificate"]["witnesses"]["1"]["m"] = v["certificate"]["witnesses"]["1"]["n"]
    assert "contraction_witnesses" in failed(tamper(gold, "contraction_witnesses", shrink))


def dot_counts(text):
    body = [ln.strip() for ln in text.splitlines() if ln.startswith("  ")]
    return sum("->" not in ln for ln in body), sum("->" in ln for ln in body)


def test_export_dot(tmp_path):
    r = run("export-dot", "path3.ckg")
    assert r.returncode == 0 and dot_counts(r.stdout) == (3, 2)
    assert not r.stdout.startswith("//")
    r = run("export-dot", "chain.period", "--depth", "4")
    assert r.stdout.startswith("// TRUNCATED") and dot_counts(r.stdout) == (5, 8)
    empty = tmp_path / "empty.ckg"
    empty.write_text("# nothing\n")
    out = tmp_path / "e.dot"
    assert main(["export-dot", str(empty), "--out", str(out)]) == 0
    assert out.read_text() == "digraph G {\n}\n"
    assert run("export-dot", "chain.period").stdout == run("export-dot", "chain.period").stdout


def report_for(obj, fmt):
    text = serialize(obj)
    return build_report(classify_input(obj), text, "generated", fmt, list(CHECKS))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_checker_accepts_every_emitted_certificate(g):
    report = json.loads(json.dumps(report_for(g, "edgelist")))
    assert not failed(report)


def test_checker_accepts_random_matrices_and_presentations():
    rng = random.Random(14)
    for _ in range(30):
        n = rng.randint(1, 5)
        A = AdjacencyMatrix.from_rows([[int(rng.random() < 0.4) for _ in range(n)] for _ in range(n)])
        assert not failed(json.loads(json.dumps(report_for(A, "matrix"))))
    for _ in range(25):
        p = random_presentation(rng, ns=rng.randint(0, 2), nb=rng.randint(1, 3), p=0.4)
        assert not failed(json.loads(json.dumps(report_for(p, "periodic"))))
