"""Analyze, verify and export from Python through the CLI entry point."""

import json
import tempfile
from contextlib import redirect_stdout
from io import StringIO
from pathlib import Path

from ckgraph.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(*argv):
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


code, table = run("analyze", str(CORPUS / "u_feeds_w.ckg"))
print(table)

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "report.json"
    code, text = run("analyze", str(CORPUS / "golden.mtx"), "--json")
    out.write_text(text)
    print("verdicts:", sorted(json.loads(text)["verdicts"]))
    code, lines = run("verify", str(out))
    print(lines, "exit", code)

code, dot = run("export-dot", str(CORPUS / "ray.period"), "--depth", "2")
print(dot)
