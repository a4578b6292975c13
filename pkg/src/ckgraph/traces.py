"""Graph-traces, path counts, unital quotients, S^0 and the stability dispatch."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exact_lp import RationalLinearSystem, feasible_nonnegative, rational_rank
from .graph import DirectedGraph, GraphError, natural_key, reaching, strongly_connected_components, topological_order
from .presentations import AdjacencyMatrix, PeriodicPresentation, graph_of_matrix
from .verdict import Verdict, no, unknown, yes

TRACE_CONDITION = "tau >= 0 with tau(v) = sum of tau over the ranges of edges leaving v, for every non-sink v"
STABLE_CONDITION = "no left-finite cycles, and no non-zero bounded graph-trace on the subgraph S^0"
ACYCLIC_STABLE = "an acyclic graph gives a stable algebra iff it has no non-zero bounded graph-trace"
UNITAL_CONDITION = "a unital quotient exists iff the vertex set is finite or some cycle is left-finite"


def trace_equations(g: DirectedGraph) -> tuple[list[list[int]], list[str]]:
    """Rows ``tau(v) - sum tau(r(e)) = 0`` for the non-sinks; columns follow
    ``g.vertices``."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    rows, labels = [], []
    for v in g.vertices:
        if not g.out_edges(v):
            continue
        row = [0] * len(idx)
        row[idx[v]] += 1
        for e in g.out_edges(v):
            row[idx[e.range]] -= 1
        rows.append(row)
        labels.append(v)
    return rows, labels


def trace_system(g: DirectedGraph) -> RationalLinearSystem:
    rows, _ = trace_equations(g)
    n = len(g.vertices)
    return RationalLinearSystem.of(rows + [[1] * n], [0] * len(rows) + [1], ncols=n)


def is_graph_trace(g: DirectedGraph, tau: Mapping[str, Fraction]) -> bool:
    if any(tau.get(v, 0) < 0 for v in g.vertices):
        return False
    return all(tau.get(v, 0) == sum(tau.get(e.range, 0) for e in g.out_edges(v))
               for v in g.vertices if g.out_edges(v))


def bounded_graph_trace(g: DirectedGraph) -> Verdict:
    """YES with a normalized trace when one exists, NO with a Farkas vector."""
    sysm = trace_system(g)
    if not g.vertices:
        return no({"kind": "empty_graph"}, TRACE_CONDITION, ["finite"])
    res = feasible_nonnegative(sysm)
    if res.feasible:
        tau = {v: str(x) for v, x in zip(g.vertices, res.x)}
        return yes({"kind": "graph_trace", "values": tau}, TRACE_CONDITION, ["finite"])
    _, labels = trace_equations(g)
    return no({"kind": "farkas", "rows": labels + ["normalization"], "y": [str(y) for y in res.y]},
              TRACE_CONDITION, ["finite"])


def trace_solution_dimension(g: DirectedGraph) -> int:
    """Dimension of the space of (signed) solutions of the trace equations."""
    rows, _ = trace_equations(g)
    return len(g.vertices) - rational_rank(rows)


def path_counts(g: DirectedGraph, v: str) -> dict[str, int]:
    """Number of paths from ``v`` to each sink (the empty path counts for ``v``)."""
    g.check_vertex(v)
    order = topological_order(g)
    if order is None:
        raise GraphError("path counts need an acyclic graph")
    memo: dict[str, dict[str, int]] = {}
    for u in reversed(order):
        if not g.out_edges(u):
            memo[u] = {u: 1}
            continue
        acc: dict[str, int] = {}
        for e in g.out_edges(u):
            for s, c in memo[e.range].items():
                acc[s] = acc.get(s, 0) + c
        memo[u] = acc
    return dict(sorted(memo[v].items(), key=lambda t: natural_key(t[0])))


def path_count_identity(g: DirectedGraph, v: str, tau_sinks: Mapping[str, Fraction]) -> Fraction:
    """``sum_i n_i * tau(v_i)`` over the sinks ``v_i`` reachable from ``v``."""
    counts = path_counts(g, v)
    return sum((Fraction(c) * Fraction(tau_sinks[s]) for s, c in counts.items()), Fraction(0))


def s0_finite(g: DirectedGraph) -> tuple[frozenset[str], DirectedGraph]:
    """On a finite graph every vertex is left-finite; ``S^0`` is the set of
    vertices starting an infinite path, i.e. those that reach a cycle."""
    scc = strongly_connected_components(g)
    cyc = [v for i, c in enumerate(scc.components) if scc.cyclic[i] for v in c]
    s0 = reaching(g, cyc) if cyc else frozenset()
    return s0, g.range_restricted(s0)


def s0_subgraph(obj, depth: int | None = None):
    """``(S^0, S)`` for a finite graph; an ``S0Set`` for a periodic presentation."""
    if isinstance(obj, PeriodicPresentation):
        from .periodic import s0_periodic

        return s0_periodic(obj, depth)
    if isinstance(obj, AdjacencyMatrix):
        obj = graph_of_matrix(obj)
    return s0_finite(obj)


def has_unital_quotient(obj, depth: int | None = None) -> Verdict:
    if isinstance(obj, PeriodicPresentation):
        from .periodic import periodic_has_unital_quotient

        return periodic_has_unital_quotient(obj, depth)
    g = graph_of_matrix(obj) if isinstance(obj, AdjacencyMatrix) else obj
    if not g.vertices:
        return no({"kind": "zero_algebra"}, UNITAL_CONDITION, ["finite"])
    return yes({"kind": "finite_vertex_set", "L": list(g.vertices)}, UNITAL_CONDITION, ["finite"])


def is_stable(obj, depth: int | None = None) -> Verdict:
    if isinstance(obj, PeriodicPresentation):
        from .periodic import periodic_is_stable

        return periodic_is_stable(obj, depth)
    g = graph_of_matrix(obj) if isinstance(obj, AdjacencyMatrix) else obj
    if not isinstance(g, DirectedGraph):
        return unknown(f"unsupported input {type(obj).__name__}", STABLE_CONDITION)
    if not g.vertices:
        return yes({"kind": "zero_algebra"}, STABLE_CONDITION, ["finite"])
    cert = {"kind": "unital", "vertex_count": len(g.vertices)}
    if topological_order(g) is not None:
        t = bounded_graph_trace(g)
        cert["graph_trace"] = t.certificate.get("values")
        return no(cert, ACYCLIC_STABLE, ["finite", "acyclic"])
    return no(cert, STABLE_CONDITION, ["finite"])
