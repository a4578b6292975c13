"""Independent verification of report certificates.

Each certificate is checked against the input embedded in the report.  Where
a certificate is a concrete object (a cycle, a trace, a Farkas vector, a
cylinder) it is checked directly.  Negative claims without a finite witness
are checked by a different method than the one that produced them when one
is available (brute force on small inputs, truncations justified by the
pumping bounds) and by re-derivation otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable

import sympy as sp

from .classify import is_purely_infinite_bruteforce
from .exact_lp import check_farkas
from .graph import (
    CycleLimitExceeded, DirectedGraph, GraphError, connects_to_cycle_with_exit, find_cycle, simple_cycles,
)
from .ideals import LatticeCapExceeded, is_hereditary_saturated
from .periodic import (
    PerronWitness, _strongly_connected, is_presentation_saturated, parse_rname, periodic_has_unital_quotient,
    periodic_is_stable, pumping_depth, quotient_presentation, torus_search_depth,
)
from .polynomial import RealRoot, X, to_sympy
from .presentations import (
    AdjacencyMatrix, PeriodicPresentation, Realization, graph_of_matrix, parse, realize_truncation,
)
from .shiftspace import Cylinder, ContractionWitness, verify_contraction
from .traces import is_graph_trace, trace_system

BRUTE_FORCE_VERTICES = 14


class Failure(Exception):
    pass


def _need(cond, msg: str) -> None:
    if not cond:
        raise Failure(msg)


# -- paths -------------------------------------------------------------------------

def _finite_path(g: DirectedGraph, d: dict, closed: bool = False) -> list[str]:
    edges, verts = d["edges"], d["vertices"]
    _need(edges and len(verts) == len(edges) + 1, "malformed path")
    for i, eid in enumerate(edges):
        try:
            e = g.edge(eid)
        except GraphError:
            raise Failure(f"unknown edge {eid!r}") from None
        _need(e.source == verts[i] and e.range == verts[i + 1], f"edge {eid!r} does not chain")
    _need(not closed or verts[0] == verts[-1], "path is not closed")
    return verts


def _realized_path(r: Realization, d: dict, closed: bool = False) -> list:
    edges, verts = d["edges"], [parse_rname(v) for v in d["vertices"]]
    _need(edges and len(verts) == len(edges) + 1, "malformed path")
    for i, eid in enumerate(edges):
        _need((eid, verts[i + 1]) in r.out_edges(verts[i]), f"edge {eid!r} not in the realized graph")
    _need(not closed or verts[0] == verts[-1], "path is not closed")
    return verts


def _finite_exits(g: DirectedGraph, d: dict) -> list[str]:
    on = set(d["edges"])
    return sorted({e.id for v in d["vertices"] for e in g.out_edges(v) if e.id not in on})


# -- finite verdicts ----------------------------------------------------------------

def _af(g: DirectedGraph, v: dict, obj) -> None:
    c = v["certificate"]
    if c["kind"] == "acyclic":
        order = c["topological_order"]
        _need(sorted(order) == sorted(g.vertices), "order is not a permutation of the vertices")
        pos = {x: i for i, x in enumerate(order)}
        _need(all(pos[e.source] < pos[e.range] for e in g.edges), "an edge points backwards")
        _need(v["value"] == "yes", "acyclic certificate with a non-yes value")
    elif c["kind"] == "cycle":
        _finite_path(g, c["cycle"], closed=True)
        exits = _finite_exits(g, c["cycle"])
        _need(bool(exits) == c["has_exit"], "exit flag is wrong")
        if exits:
            _need(sorted(c["exit_edges"]) == exits, "exit edges are wrong")
        _need(v["value"] == "no", "cycle certificate with a non-no value")
    elif c["kind"] == "refused":
        _need(isinstance(obj, AdjacencyMatrix) and obj.zero_rows(), "refusal without zero rows")
    else:
        raise Failure(f"unknown af certificate {c['kind']!r}")


def _exit_free_simple_cycles(g: DirectedGraph) -> int | None:
    try:
        cycles = simple_cycles(g, 10**4)
    except CycleLimitExceeded:
        return None
    return sum(1 for c in cycles if all(len(g.out_edges(x)) == 1 for x in c.vertices))


def _torus(g: DirectedGraph, v: dict) -> None:
    corners = v["certificate"]["corners"]
    for t in corners:
        _finite_path(g, t["cycle"], closed=True)
        _need(not _finite_exits(g, t["cycle"]), "torus corner has an exit")
        _need(t["period"] == len(t["cycle"]["edges"]), "wrong period")
    n = _exit_free_simple_cycles(g)
    if n is not None:
        _need(n == len(corners), f"{n} exit-free cycles exist, {len(corners)} listed")
    _need((v["value"] == "yes") == bool(corners), "value disagrees with the corner list")


def _quotient_of(g: DirectedGraph, H: list[str]) -> DirectedGraph:
    _need(is_hereditary_saturated(g, H), "H is not hereditary and saturated")
    h = set(H)
    return g.range_restricted(x for x in g.vertices if x not in h)


def _small_lattice(g: DirectedGraph) -> bool:
    return len(g.vertices) <= BRUTE_FORCE_VERTICES


def _pi_finite(g: DirectedGraph, v: dict) -> None:
    c = v["certificate"]
    if c["kind"] == "quotient_torus":
        q = _quotient_of(g, c["H"])
        _finite_path(q, c["cycle"], closed=True)
        _need(not _finite_exits(q, c["cycle"]), "cycle has an exit in the quotient")
        _need(v["value"] == "no", "obstruction with a non-no value")
    elif c["kind"] == "no_quotient_torus":
        _need(v["value"] == "yes", "witness list with a non-yes value")
        for x in g.vertices:
            w = c["witnesses"][x]
            if w["path"]:
                _finite_path(g, w["path"])
                _need(w["path"]["vertices"][0] == x, "witness path starts elsewhere")
                _need(w["path"]["vertices"][-1] == w["cycle"]["vertices"][0], "path misses the cycle")
            else:
                _need(w["cycle"]["vertices"][0] == x, "cycle is not based at the vertex")
            _finite_path(g, w["cycle"], closed=True)
            _need(_finite_exits(g, w["cycle"]), "witness cycle has no exit")
        if _small_lattice(g):
            _need(is_purely_infinite_bruteforce(g), "a quotient by some ideal has an exit-free corner")
    elif c["kind"] == "refused":
        _need(g.sinks(), "refusal although the graph has no sinks")
    else:
        raise Failure(f"unknown pure-infiniteness certificate {c['kind']!r}")


def _trace_values(g: DirectedGraph, values: dict) -> None:
    tau = {k: Fraction(x) for k, x in values.items()}
    _need(set(tau) == set(g.vertices), "trace not defined on every vertex")
    _need(is_graph_trace(g, tau), "trace equation fails")
    _need(sum(tau.values()) == 1, "trace is not normalized")


def _graph_trace(g: DirectedGraph, v: dict) -> None:
    c = v["certificate"]
    if c["kind"] == "graph_trace":
        _trace_values(g, c["values"])
        _need(v["value"] == "yes", "trace with a non-yes value")
    elif c["kind"] == "farkas":
        _need(check_farkas(trace_system(g), [Fraction(y) for y in c["y"]]), "Farkas vector fails")
        _need(v["value"] == "no", "Farkas vector with a non-no value")
    elif c["kind"] == "empty_graph":
        _need(not g.vertices, "graph is not empty")
    else:
        raise Failure(f"unknown trace certificate {c['kind']!r}")


def _stable_finite(g: DirectedGraph, v: dict) -> None:
    c = v["certificate"]
    if c["kind"] == "zero_algebra":
        _need(not g.vertices and v["value"] == "yes", "zero algebra claim on a nonempty graph")
    elif c["kind"] == "unital":
        _need(g.vertices and v["value"] == "no", "unital claim on an empty graph")
        _need(c["vertex_count"] == len(g.vertices), "wrong vertex count")
        if c.get("graph_trace"):
            _trace_values(g, c["graph_trace"])
    else:
        raise Failure(f"unknown stability certificate {c['kind']!r}")


def _unital_finite(g: DirectedGraph, v: dict) -> None:
    c = v["certificate"]
    if c["kind"] == "finite_vertex_set":
        _need(g.vertices and sorted(c["L"]) == sorted(g.vertices) and v["value"] == "yes", "bad unit")
    elif c["kind"] == "zero_algebra":
        _need(not g.vertices and v["value"] == "no", "zero algebra claim on a nonempty graph")
    else:
        raise Failure(f"unknown unital certificate {c['kind']!r}")


def _lattice(g: DirectedGraph, v: dict) -> None:
    c = v["certificate"]
    if c["kind"] == "refused":
        return
    sets = [frozenset(s) for s in c["sets"]]
    _need(len(set(sets)) == len(sets), "duplicate sets")
    for s in sets:
        _need(is_hereditary_saturated(g, s), f"{sorted(s)} is not hereditary and saturated")
    if _small_lattice(g):
        vs = list(g.vertices)
        count = sum(1 for k in range(len(vs) + 1) for s in combinations(vs, k) if is_hereditary_saturated(g, s))
        _need(count == len(sets), f"lattice has {count} sets, {len(sets)} listed")
    for i, j in c["covers"]:
        _need(sets[i] < sets[j], "cover pair is not an inclusion")
        _need(not any(sets[i] < u < sets[j] for u in sets), "cover pair skips a set")


def _contraction(A: AdjacencyMatrix, v: dict) -> None:
    g = graph_of_matrix(A)
    complete = True
    for key, w in v["certificate"]["witnesses"].items():
        if w is None:
            _need(connects_to_cycle_with_exit(g, key) is None, f"vertex {key} has a witness")
            complete = False
            continue
        _need(str(w["vertex"]) == key, "witness filed under the wrong vertex")
        cw = ContractionWitness(w["vertex"], Cylinder(tuple(w["W"])), w["n"], w["m"],
                                tuple(w["path"]), tuple(w["cycle"]))
        try:
            ok = verify_contraction(A, cw)
        except GraphError as exc:
            raise Failure(str(exc)) from None
        _need(ok, f"contraction for vertex {key} fails")
        _need(tuple(w["W"][:1]) == (int(key),), "W does not start at the vertex")
    _need((v["value"] == "yes") == complete, "value disagrees with the witnesses")


def _closed_walk_growth(A: AdjacencyMatrix, v: int) -> bool:
    """Some vertex reachable from ``v`` has two closed walks of one length."""
    n = A.n
    rows = [[A(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    reach, frontier = {v}, [v]
    while frontier:
        u = frontier.pop()
        for j in A.successors(u):
            if j not in reach:
                reach.add(j)
                frontier.append(j)
    P = [r[:] for r in rows]
    for _ in range(3 * n):
        if any(P[u - 1][u - 1] >= 2 for u in reach):
            return True
        P = [[sum(P[i][k] * rows[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return False


def _aperiodic(A: AdjacencyMatrix, v: dict) -> None:
    g = graph_of_matrix(A)
    allyes = True
    for key, d in v["certificate"]["vertices"].items():
        c = d["certificate"]
        if d["value"] == "yes":
            if c["path"]:
                _finite_path(g, c["path"])
                _need(c["path"]["vertices"][0] == key, "path starts elsewhere")
            c1, c2 = c["cycles"]
            for cyc in (c1, c2):
                _finite_path(g, cyc, closed=True)
                _need(cyc["vertices"][0] == c["vertex"], "cycle is not based at the hub")
            _need(c1["edges"] != c2["edges"], "the two cycles coincide")
        else:
            allyes = False
            _need(not _closed_walk_growth(A, int(key)), f"vertex {key} does reach a branching cycle")
    _need((v["value"] == "yes") == allyes, "value disagrees with the per-vertex verdicts")


# -- periodic verdicts ---------------------------------------------------------------

def _no_cycle_below(p: PeriodicPresentation, depth: int) -> None:
    _need(depth >= pumping_depth(p), "search depth below the pumping bound")
    _need(find_cycle(realize_truncation(p, depth)) is None, "truncation has a cycle")


def _af_periodic(p: PeriodicPresentation, v: dict) -> None:
    c = v["certificate"]
    if c["kind"] == "realized_cycle":
        _realized_path(Realization(p), c["cycle"], closed=True)
        _need(v["value"] == "no", "cycle with a non-no value")
    elif c["kind"] == "no_realized_cycle":
        _no_cycle_below(p, c["search_depth"])
        _need(v["value"] == "yes", "acyclic with a non-yes value")
    else:
        raise Failure(f"unknown af certificate {c['kind']!r}")


def _torus_periodic(p: PeriodicPresentation, v: dict) -> None:
    r = Realization(p)
    c = v["certificate"]
    for t in c["corners"]:
        verts = _realized_path(r, t["cycle"], closed=True)
        _need(all(len(r.out_edges(x)) == 1 for x in verts), "torus corner has an exit")
    _need(c["search_depth"] >= torus_search_depth(p), "torus search too shallow")
    g = realize_truncation(p, c["search_depth"] + 1)
    n = _exit_free_simple_cycles(g.induced(x for x in g.vertices
                                           if len(r.out_edges(parse_rname(x))) == 1))
    _need(n is None or (n > 0) == bool(c["corners"]), "exit-free cycles missed")


def _lf_cycle(p: PeriodicPresentation, c: dict) -> None:
    r = Realization(p)
    verts = _realized_path(r, c["cycle"], closed=True)
    L = {parse_rname(x) for x in c["L"]}
    _need(set(verts) <= L, "L misses cycle vertices")
    for x in L:
        for _, w in r.in_edges(x):
            _need(w in L, "L is not closed under predecessors")


def _perron(p: PeriodicPresentation, c: dict) -> None:
    from .periodic import verify_perron_witness

    f = sp.Poly(sp.sympify(c["minimal_polynomial"]), X, domain="QQ")
    lo, hi = (to_sympy(Fraction(b)) for b in c["root_interval"])
    vec = {x: sp.Poly(sp.sympify(e), X, domain="QQ") for x, e in c["vector"].items()}
    w = PerronWitness(c["vertices"], c["M"], c["class"], f, RealRoot(f, lo, hi), vec, c["level"])
    _need(verify_perron_witness(p, w, copies=3), "Perron trace fails the graph-trace equation")
    # the witness must live on S^0: its vertices form the periodic tail
    _need(sorted(c["vertices"]) == sorted(c["S0"]["tail"]), "trace is not supported on S^0")


def _rederive(fn: Callable, p: PeriodicPresentation, v: dict, depth) -> None:
    again = fn(p, depth).to_dict()
    _need(again["value"] == v["value"] and again["certificate"]["kind"] == v["certificate"]["kind"],
          "re-derivation disagrees")


def _stable_periodic(p: PeriodicPresentation, v: dict, depth) -> None:
    c = v["certificate"]
    if c["kind"] == "left_finite_cycle":
        _lf_cycle(p, c)
        _need(v["value"] == "no", "left-finite cycle with a non-no value")
    elif c["kind"] == "perron_trace":
        _perron(p, c)
        _need(v["value"] == "no", "trace with a non-no value")
    elif c["kind"] in ("S0_empty", "perron_no_trace", "refused"):
        _rederive(periodic_is_stable, p, v, depth)
    else:
        raise Failure(f"unknown stability certificate {c['kind']!r}")


def _unital_periodic(p: PeriodicPresentation, v: dict, depth) -> None:
    c = v["certificate"]
    if c["kind"] == "left_finite_cycle":
        _lf_cycle(p, c)
        _need(v["value"] == "yes", "left-finite cycle with a non-yes value")
    else:
        _rederive(periodic_has_unital_quotient, p, v, depth)


def _pi_periodic(p: PeriodicPresentation, v: dict, depth) -> None:
    c = v["certificate"]
    if c["kind"] == "strongly_connected":
        r = Realization(p)
        verts = _realized_path(r, c["cycle"], closed=True)
        on = set(c["cycle"]["edges"])
        _need(any(eid not in on for x in verts for eid, _ in r.out_edges(x)), "cycle has no exit")
        _need(_strongly_connected(p, c["depth"]) is not None, "strong connectivity not confirmed")
        _need(v["value"] == "yes", "strongly connected with a non-yes value")
    elif c["kind"] == "quotient_obstruction":
        _need(v["value"] == "no", "obstruction with a non-no value")
        H = frozenset(c["H"])
        q = p
        if H:
            _need(is_presentation_saturated(p, H), "H is not saturated")
            r = Realization(p)
            for x in H:
                lv = 0 if x in p.stem else 1
                for lvl in ((0,) if lv == 0 else (1, 2)):
                    _need(all(w[0] in H for _, w in r.out_edges((x, lvl))), "H is not hereditary")
            q = quotient_presentation(p, H)
        ob = c["obstruction"]
        if ob == "finite_quotient":
            _need(isinstance(q, DirectedGraph), "quotient is not finite")
            _pi_finite(q, {"value": "no", "certificate": c["finite"]})
        elif ob == "no_realized_cycle":
            _no_cycle_below(q, c["search_depth"])
        elif ob == "exit_free_cycle":
            r = Realization(q)
            verts = _realized_path(r, c["cycle"], closed=True)
            _need(all(len(r.out_edges(x)) == 1 for x in verts), "cycle has an exit")
        else:
            raise Failure(f"unknown obstruction {ob!r}")
    elif c["kind"] == "refused":
        _need(Realization(p).sinks() or "depth" in c, "refusal without a reason")
    else:
        raise Failure(f"unknown pure-infiniteness certificate {c['kind']!r}")


# -- dispatch ------------------------------------------------------------------------

def _unsupported(v: dict) -> None:
    _need(v["value"] == "unknown", "unsupported check with a definite value")


def check_verdict(kind: str, obj, graph: DirectedGraph | None, key: str, v: dict, depth=None) -> None:
    """Raise ``Failure`` unless ``v`` verifies for the verdict ``key``."""
    c = v["certificate"]
    if c.get("unsupported"):
        return _unsupported(v)
    if kind == "periodic":
        table = {
            "af": lambda: _af_periodic(obj, v),
            "torus_corners": lambda: _torus_periodic(obj, v),
            "stable": lambda: _stable_periodic(obj, v, depth),
            "unital_quotient": lambda: _unital_periodic(obj, v, depth),
            "purely_infinite": lambda: _pi_periodic(obj, v, depth),
        }
    else:
        g = graph
        table = {
            "af": lambda: _af(g, v, obj),
            "torus_corners": lambda: _torus(g, v),
            "purely_infinite": lambda: _pi_finite(g, v),
            "stable": lambda: _stable_finite(g, v),
            "unital_quotient": lambda: _unital_finite(g, v),
            "hereditary_saturated_lattice": lambda: _lattice(g, v),
            "graph_trace": lambda: _graph_trace(g, v),
        }
        if kind == "matrix":
            A = obj
            table["contraction_witnesses"] = lambda: (_need(A.zero_rows(), "refusal without zero rows")
                                                      if c["kind"] == "refused" else _contraction(A, v))
            table["aperiodic_points"] = lambda: (_need(A.zero_rows(), "refusal without zero rows")
                                                 if c["kind"] == "refused" else _aperiodic(A, v))
    if key not in table:
        raise Failure(f"no checker for verdict {key!r} on {kind} input")
    table[key]()


def verify_report(report: dict) -> list[tuple[str, bool, str]]:
    """One ``(verdict, ok, message)`` row per verdict in the report."""
    inp = report["input"]
    parsed = parse(inp["text"], inp["format"])
    depth = report.get("options", {}).get("depth")
    rows = []
    for key, v in sorted(report["verdicts"].items()):
        try:
            check_verdict(parsed.kind, parsed.obj, parsed.graph, key, v, depth)
            rows.append((key, True, "ok"))
        except Failure as exc:
            rows.append((key, False, str(exc)))
        except (GraphError, LatticeCapExceeded, KeyError, TypeError, ValueError) as exc:
            rows.append((key, False, f"malformed certificate: {exc!r}"))
    return rows
