"""Verdicts for finite graphs: AF, torus corners, pure infiniteness."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Path, DirectedGraph, connects_to_cycle_with_exit, cycle_has_exit, cycle_through, exit_edges,
    find_cycle, natural_key, reachable_from, strongly_connected_components, topological_order,
)
from .ideals import (
    DEFAULT_LATTICE_CAP, LatticeCapExceeded, enumerate_hereditary_saturated, generated_ideal,
    quotient_graph,
)
from .presentations import AdjacencyMatrix, graph_of_matrix
from .verdict import Verdict, no, path_dict, unknown, yes

AF_CONDITION = "AF iff the graph has no cycles"
PI_CONDITION = "every vertex connects to a cycle with an exit in every quotient by a hereditary saturated set"
PIV_CONDITION = "the vertex connects to a cycle with an exit in every quotient not containing it"


@dataclass(frozen=True)
class TorusCorner:
    cycle: Path

    @property
    def period(self) -> int:
        return len(self.cycle)

    def to_dict(self) -> dict:
        return {"period": self.period, "cycle": path_dict(self.cycle)}


def is_af(obj: DirectedGraph | AdjacencyMatrix) -> Verdict:
    hyp = ["row-finite"]
    if isinstance(obj, AdjacencyMatrix):
        hyp.append("no zero rows")
        if obj.zero_rows():
            return unknown("matrix has zero rows", AF_CONDITION, hyp, zero_rows=obj.zero_rows())
        g = graph_of_matrix(obj)
    else:
        g = obj
    c = find_cycle(g)
    if c is None:
        return yes({"kind": "acyclic", "topological_order": topological_order(g)}, AF_CONDITION, hyp)
    cert = {"kind": "cycle", "cycle": path_dict(c), "has_exit": cycle_has_exit(g, c)}
    if cert["has_exit"]:
        cert["exit_edges"] = exit_edges(g, c)
    else:
        cert["torus_period"] = len(c)
    return no(cert, AF_CONDITION, hyp)


def torus_corners(g: DirectedGraph) -> list[TorusCorner]:
    """Exit-free simple cycles.  Such a cycle is a whole SCC in which every
    vertex has out-degree one, so no cycle enumeration is needed."""
    scc = strongly_connected_components(g)
    out = []
    for i, comp in enumerate(scc.components):
        if scc.cyclic[i] and all(len(g.out_edges(v)) == 1 for v in comp):
            out.append(TorusCorner(cycle_through(g, min(comp, key=natural_key))))
    return sorted(out, key=lambda t: natural_key(t.cycle.source))


def _hypotheses(g: DirectedGraph) -> str | None:
    if g.sinks():
        return f"graph has sinks {sorted(g.sinks(), key=natural_key)}"
    return None


def quotient_tori(g: DirectedGraph):
    """Yield ``(H, cycle)`` for each cycle that is exit-free in some quotient.

    A cycle can lose all its exits in a quotient only if its SCC consists of
    that cycle alone; the smallest ideal killing its exits is generated by the
    exit ranges, and it works iff it misses the cycle.
    """
    scc = strongly_connected_components(g)
    for i, comp in enumerate(scc.components):
        if not scc.cyclic[i]:
            continue
        if any(sum(e.range in comp for e in g.out_edges(v)) != 1 for v in comp):
            continue
        outside = [e.range for v in comp for e in g.out_edges(v) if e.range not in comp]
        h = generated_ideal(g, outside)
        if not (h & comp):
            cyc = cycle_through(g.range_restricted(g.vertex_set - h), min(comp, key=natural_key))
            yield h, cyc


def is_purely_infinite(g: DirectedGraph) -> Verdict:
    hyp = ["finite", "locally finite", "no sinks"]
    bad = _hypotheses(g)
    if bad:
        return unknown(bad, PI_CONDITION, hyp)
    for h, cyc in quotient_tori(g):
        return no({
            "kind": "quotient_torus",
            "H": sorted(h, key=natural_key),
            "vertex": cyc.source,
            "cycle": path_dict(cyc),
        }, PI_CONDITION, hyp)
    # every cyclic SCC in every quotient keeps an exit; record the witnesses for H = empty
    witnesses = {}
    for v in g.vertices:
        p, c = connects_to_cycle_with_exit(g, v)
        witnesses[v] = {"path": path_dict(p) if p else None, "cycle": path_dict(c)}
    return yes({"kind": "no_quotient_torus", "witnesses": witnesses}, PI_CONDITION, hyp)


def properly_infinite_vertex(g: DirectedGraph, v: str, cap: int = DEFAULT_LATTICE_CAP) -> Verdict:
    """Checks every hereditary saturated set missing ``v`` one at a time."""
    g.check_vertex(v)
    hyp = ["finite", "locally finite", "no sinks"]
    bad = _hypotheses(g)
    if bad:
        return unknown(bad, PIV_CONDITION, hyp)
    try:
        lattice = enumerate_hereditary_saturated(g, cap)
    except LatticeCapExceeded as exc:
        return unknown(str(exc), PIV_CONDITION, hyp)
    checked = 0
    for h in lattice:
        if v in h:
            continue
        q = quotient_graph(g, h)
        checked += 1
        if connects_to_cycle_with_exit(q, v) is None:
            reach = reachable_from(q, v)
            c = torus_corners(q.induced(reach))
            return no({
                "kind": "quotient_obstruction",
                "H": sorted(h, key=natural_key),
                "vertex": v,
                "torus": c[0].to_dict() if c else None,
            }, PIV_CONDITION, hyp)
    return yes({"kind": "all_quotients_checked", "quotients_checked": checked}, PIV_CONDITION, hyp)


def is_purely_infinite_bruteforce(g: DirectedGraph, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Direct reading of the quotient condition over the whole lattice."""
    for h in enumerate_hereditary_saturated(g, cap):
        q = quotient_graph(g, h)
        if any(connects_to_cycle_with_exit(q, v) is None for v in q.vertices):
            return False
    return True

