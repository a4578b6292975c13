"""Command line front end: ``analyze``, ``verify`` and ``export-dot``."""

from __future__ import annotations

import argparse
import json
import sys

from .checker import verify_report
from .graph import DirectedGraph, GraphError
from .presentations import FORMATS, ParseError, ParsedInput, parse, realize_truncation, sniff_format
from .report import CHECKS, build_report, parse_checks

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2
DEFAULT_CLI_CYCLE_CAP = 10_000


class _Parser(argparse.ArgumentParser):
    # usage mistakes are validation errors; exit code 2 is reserved for
    # inputs none of whose requested checks apply
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _load(path: str, fmt: str | None) -> tuple[ParsedInput, str, str]:
    fmt = fmt or sniff_format(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse(text, fmt), text, fmt


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _summary(report: dict) -> str:
    gc = report["graph_class"]
    lines = [f"input: {report['input']['path']} ({report['input']['format']}, {gc['tag']})"]
    flags = [k for k in ("no_sinks", "locally_finite", "row_finite", "no_zero_rows") if gc[k]]
    lines.append("class: " + (", ".join(flags) or "-"))
    width = max((len(k) for k in report["verdicts"]), default=0)
    for key, v in report["verdicts"].items():
        c = v["certificate"]
        detail = c.get("reason") if v["value"] == "unknown" else c.get("kind")
        lines.append(f"{key.ljust(width)}  {v['value'].upper():7}  {detail}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        checks = parse_checks(args.check)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        parsed, text, fmt = _load(args.input, args.format)
    except (GraphError, OSError) as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = build_report(parsed, text, args.input, fmt, checks, args.depth, args.cycle_cap)
    out = _dump(report) if args.json else _summary(report)
    sys.stdout.write(out)
    verdicts = report["verdicts"].values()
    if verdicts and all(v["value"] == "unknown" and v["certificate"].get("unsupported") for v in verdicts):
        return EXIT_UNSUPPORTED
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            report = json.load(fh)
        rows = verify_report(report)
    except (OSError, json.JSONDecodeError, KeyError, ParseError, GraphError) as exc:
        print(f"{args.report}: cannot verify: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for key, ok, msg in rows:
        print(f"{'PASS' if ok else 'FAIL'} {key}: {msg}")
    return EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_INPUT


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: DirectedGraph, banner: str | None = None) -> str:
    lines = [f"// {banner}"] if banner else []
    lines.append("digraph G {")
    for v in g.vertices:
        lines.append(f"  {_quote(v)};")
    for e in g.edges:
        lines.append(f"  {_quote(e.source)} -> {_quote(e.range)} [label={_quote(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(parsed: ParsedInput, depth: int | None = None) -> str:
    if parsed.kind == "periodic":
        p = parsed.obj
        k = depth if depth is not None else len(p.stem.vertices) + 3 * len(p.block.vertices)
        g = realize_truncation(p, k)
        return to_dot(g, f"TRUNCATED: stem plus block copies 1..{k}; edges into copy {k + 1} omitted")
    return to_dot(parsed.graph)


def cmd_export_dot(args) -> int:
    try:
        parsed, _, _ = _load(args.input, args.format)
        if args.depth is not None and args.depth < 1:
            raise GraphError("--depth must be >= 1")
    except (GraphError, OSError) as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    dot = export_dot(parsed, args.depth)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ckgraph", description="Decide structural properties of graph C*-algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    formats = sorted(set(FORMATS.values()))

    a = sub.add_parser("analyze", help="run checks on a graph, matrix or periodic presentation")
    a.add_argument("input")
    a.add_argument("--format", choices=formats, help="default: from the file extension (.ckg, .mtx, .period)")
    a.add_argument("--check", default="all", help=f"comma-separated subset of {','.join(CHECKS)},all")
    a.add_argument("--json", action="store_true", help="emit the JSON report")
    a.add_argument("--depth", type=int, help="copy depth for periodic exploration")
    a.add_argument("--cycle-cap", type=int, default=DEFAULT_CLI_CYCLE_CAP, help="bound on simple-cycle enumeration")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="re-check every certificate in a JSON report")
    v.add_argument("report")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("export-dot", help="write Graphviz DOT (periodic inputs are truncated)")
    d.add_argument("input")
    d.add_argument("--format", choices=formats)
    d.add_argument("--depth", type=int, help="copies of the block to realize")
    d.add_argument("--out", help="write to this file instead of stdout")
    d.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
