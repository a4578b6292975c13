import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from ckgraph.exact_lp import check_farkas
from ckgraph.graph import DirectedGraph, Edge, GraphError
from ckgraph.presentations import parse
from ckgraph.traces import (
    bounded_graph_trace, has_unital_quotient, is_graph_trace, is_stable, path_count_identity,
    path_counts, s0_subgraph, trace_solution_dimension, trace_system,
)
from conftest import graph_from, graphs, random_dag

O2 = DirectedGraph(["v"], [Edge("e", "v", "v"), Edge("f", "v", "v")])
PATH3 = graph_from("v1>v2 v2>v3")
LOOP = graph_from("v>v")
TREE2 = graph_from("r>a r>b a>c a>d b>e b>f")


def test_bounded_trace_examples():
    v = bounded_graph_trace(O2)
    assert v.no and check_farkas(trace_system(O2), [F(y) for y in v.certificate["y"]])
    v = bounded_graph_trace(PATH3)
    assert v.yes and v.certificate["values"] == {"v1": "1/3", "v2": "1/3", "v3": "1/3"}
    assert bounded_graph_trace(LOOP).certificate["values"] == {"v": "1"}


def test_path_count_examples():
    assert path_count_identity(PATH3, "v1", {"v3": 1}) == 1
    assert path_count_identity(TREE2, "r", {s: 1 for s in "cdef"}) == 4
    assert path_count_identity(PATH3, "v3", {"v3": F(2, 7)}) == F(2, 7)
    with pytest.raises(GraphError):
        path_counts(LOOP, "v")


def test_unital_and_stable_examples():
    assert has_unital_quotient(O2).yes
    v = is_stable(O2)
    assert v.no and v.certificate["kind"] == "unital"
    v = is_stable(PATH3)
    assert v.no and v.certificate["graph_trace"] is not None
    assert is_stable(DirectedGraph([])).yes


def test_s0_finite():
    s0, S = s0_subgraph(O2)
    assert s0 == {"v"} and len(S.edges) == 2
    assert s0_subgraph(PATH3)[0] == frozenset()
    assert s0_subgraph(graph_from("a>b b>b c>a"))[0] == {"a", "b", "c"}


def test_periodic_dispatch():
    chain = parse(open("corpus/chain.period").read(), "periodic").obj
    assert is_stable(chain).yes and has_unital_quotient(chain).no
    assert s0_subgraph(chain).empty


def oracle_traces(g):
    """Every trace is fixed by its sink values through the path counts; unit
    sink values give a feasible point, and no sinks means only tau = 0."""
    sinks = sorted(g.sinks())
    if not sinks:
        return False, 0, None
    tau = {v: path_count_identity(g, v, {s: 1 for s in sinks}) for v in g.vertices}
    return True, len(sinks), tau


def test_acyclic_lp_matches_path_counts_random():
    rng = random.Random(17)
    for _ in range(100):
        g = random_dag(rng, rng.randint(1, 10), rng.uniform(0.1, 0.5))
        feasible, dim, tau = oracle_traces(g)
        v = bounded_graph_trace(g)
        assert v.yes == feasible
        assert trace_solution_dimension(g) == dim
        assert is_graph_trace(g, tau)
        # the LP witness is itself propagated from its own sink values
        w = {k: F(x) for k, x in v.certificate["values"].items()}
        for u in g.vertices:
            assert w[u] == path_count_identity(g, u, {s: w[s] for s in g.sinks()})


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_trace_witnesses_verify(g):
    v = bounded_graph_trace(g)
    if v.yes:
        tau = {k: F(x) for k, x in v.certificate["values"].items()}
        assert is_graph_trace(g, tau) and sum(tau.values()) == 1
    else:
        assert check_farkas(trace_system(g), [F(y) for y in v.certificate["y"]])
