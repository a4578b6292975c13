"""Assemble analysis reports: which checks apply to which input class, and the
JSON-ready verdict map they produce."""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from . import __version__
from .classify import is_af, is_purely_infinite, torus_corners
from .graph import DEFAULT_CYCLE_CAP, CycleLimitExceeded, GraphError, natural_key, simple_cycles
from .ideals import DEFAULT_LATTICE_CAP, LatticeCapExceeded, enumerate_hereditary_saturated
from .periodic import (
    periodic_is_af, periodic_is_purely_infinite, periodic_torus_corners, presentation_hereditary_saturated,
)
from .presentations import ParsedInput
from .shiftspace import contraction_witness, markov_classify
from .traces import bounded_graph_trace, has_unital_quotient, is_stable, trace_solution_dimension
from .verdict import Verdict, no, path_dict, unknown, yes

CHECKS = ("af", "pi", "stable", "ideals", "traces", "shift")

# verdict keys produced by each check name
VERDICT_KEYS = {
    "af": ("af", "torus_corners"),
    "pi": ("purely_infinite",),
    "stable": ("stable", "unital_quotient"),
    "ideals": ("hereditary_saturated_lattice",),
    "traces": ("graph_trace",),
    "shift": ("contraction_witnesses", "aperiodic_points"),
}

TORUS_CONDITION = "an exit-free cycle of period n gives a corner of n x n matrices over C(T)"
LATTICE_CONDITION = "gauge-invariant ideals correspond to hereditary saturated vertex sets"
CONTRACTION_CONDITION = "W = Z(alpha gamma), n = |alpha|, m = |alpha| + |gamma| for a cycle gamma with an exit"
APERIODIC_ALL = "every vertex starts a path that is not eventually periodic"


def report_schema() -> dict:
    """The JSON Schema every report conforms to."""
    return json.loads(resources.files(__package__).joinpath("report_schema.json").read_text())


def parse_checks(spec: str) -> list[str]:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if "all" in names:
        return list(CHECKS)
    bad = [n for n in names if n not in CHECKS]
    if bad or not names:
        raise ValueError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}, all")
    return [c for c in CHECKS if c in names]


def _unsupported(what: str, kind: str) -> Verdict:
    return unknown(f"{what} is not supported for {kind} inputs", "", [], unsupported=True)


def _corners_verdict(corners: list[dict], **extra) -> Verdict:
    cert = {"kind": "torus_corners", "corners": corners, **extra}
    return (yes if corners else no)(cert, TORUS_CONDITION)


def _af_finite(parsed: ParsedInput, cycle_cap: int) -> dict[str, Verdict]:
    g = parsed.graph
    v = is_af(parsed.obj)
    if not v.unknown:
        try:
            count = len(simple_cycles(g, cycle_cap))
        except CycleLimitExceeded:
            count = f"more than {cycle_cap}"
        v = Verdict(v.value, {**v.certificate, "simple_cycle_count": count}, v.condition, v.hypotheses)
    return {"af": v, "torus_corners": _corners_verdict([t.to_dict() for t in torus_corners(g)])}


def _lattice(parsed: ParsedInput, cap: int) -> Verdict:
    g = parsed.graph
    try:
        sets = enumerate_hereditary_saturated(g, cap)
    except LatticeCapExceeded as exc:
        return unknown(str(exc), LATTICE_CONDITION)
    index = {s: i for i, s in enumerate(sets)}
    covers = []
    for s in sets:
        above = [t for t in sets if s < t]
        for t in above:
            if not any(s < u < t for u in above):
                covers.append([index[s], index[t]])
    return yes({
        "kind": "lattice",
        "sets": [sorted(s, key=natural_key) for s in sets],
        "covers": covers,
    }, LATTICE_CONDITION, ["finite"])


def _traces(parsed: ParsedInput) -> Verdict:
    g = parsed.graph
    v = bounded_graph_trace(g)
    cert = {**v.certificate, "solution_dimension": trace_solution_dimension(g)}
    return Verdict(v.value, cert, v.condition, v.hypotheses)


def _shift(parsed: ParsedInput) -> dict[str, Verdict]:
    A = parsed.obj
    if A.zero_rows():
        why = f"matrix has zero rows {A.zero_rows()}"
        return {"contraction_witnesses": unknown(why, CONTRACTION_CONDITION, ["no zero rows"]),
                "aperiodic_points": unknown(why, APERIODIC_ALL, ["no zero rows"])}
    witnesses = {}
    for v in range(1, A.n + 1):
        try:
            witnesses[str(v)] = contraction_witness(A, v).to_dict()
        except GraphError:
            witnesses[str(v)] = None
    cw = (yes if all(witnesses.values()) else no)(
        {"kind": "contraction_witnesses", "witnesses": witnesses}, CONTRACTION_CONDITION, ["no zero rows"])
    mk = markov_classify(A)
    per = {str(v): d.to_dict() for v, d in mk["aperiodic_point"].items()}
    ap = (yes if all(d.yes for d in mk["aperiodic_point"].values()) else no)(
        {"kind": "aperiodic_points", "vertices": per}, APERIODIC_ALL, ["no zero rows"])
    return {"contraction_witnesses": cw, "aperiodic_points": ap}


def _periodic(parsed: ParsedInput, check: str, depth: int | None, cap: int) -> dict[str, Verdict]:
    p = parsed.obj
    if check == "af":
        cycles, d = periodic_torus_corners(p)
        corners = [{"period": len(c), "cycle": path_dict(c)} for c in cycles]
        return {"af": periodic_is_af(p), "torus_corners": _corners_verdict(corners, search_depth=d)}
    if check == "pi":
        return {"purely_infinite": periodic_is_purely_infinite(p, depth, cap)}
    if check == "stable":
        return {"stable": is_stable(p, depth), "unital_quotient": has_unital_quotient(p, depth)}
    if check == "ideals":
        sets = [sorted(h, key=natural_key) for h in presentation_hereditary_saturated(p, cap)]
        return {"hereditary_saturated_lattice": unknown(
            "the lattice of an infinite graph is not enumerated; listing sets made of whole columns",
            LATTICE_CONDITION, [], presentation_level=sets, unsupported=True)}
    if check == "traces":
        return {"graph_trace": _unsupported("a direct graph-trace search", "periodic")}
    return {k: _unsupported("the shift-space calculus", "periodic") for k in VERDICT_KEYS["shift"]}


def run_checks(parsed: ParsedInput, checks: list[str], depth: int | None = None,
               cycle_cap: int = DEFAULT_CYCLE_CAP, lattice_cap: int = DEFAULT_LATTICE_CAP) -> dict[str, Verdict]:
    out: dict[str, Verdict] = {}
    for check in checks:
        if parsed.kind == "periodic":
            out.update(_periodic(parsed, check, depth, lattice_cap))
        elif check == "af":
            out.update(_af_finite(parsed, cycle_cap))
        elif check == "pi":
            out["purely_infinite"] = is_purely_infinite(parsed.graph)
        elif check == "stable":
            out["stable"] = is_stable(parsed.obj)
            out["unital_quotient"] = has_unital_quotient(parsed.obj)
        elif check == "ideals":
            out["hereditary_saturated_lattice"] = _lattice(parsed, lattice_cap)
        elif check == "traces":
            out["graph_trace"] = _traces(parsed)
        elif parsed.kind == "matrix":
            out.update(_shift(parsed))
        else:
            out.update({k: _unsupported("the shift-space calculus", "edge-list") for k in VERDICT_KEYS["shift"]})
    return out


def build_report(parsed: ParsedInput, text: str, path: str, fmt: str, checks: list[str],
                 depth: int | None = None, cycle_cap: int = DEFAULT_CYCLE_CAP) -> dict:
    verdicts = run_checks(parsed, checks, depth, cycle_cap)
    return {
        "tool": {"name": "ckgraph", "version": __version__},
        "input": {
            "path": path,
            "format": fmt,
            "sha256": hashlib.sha256(text.encode()).hexdigest(),
            "text": text,
        },
        "options": {"checks": checks, "depth": depth, "cycle_cap": cycle_cap},
        "graph_class": parsed.graph_class.as_dict(),
        "verdicts": {k: v.to_dict() for k, v in sorted(verdicts.items())},
    }
