import random

from hypothesis import given, settings

from ckgraph.classify import (
    is_af, is_purely_infinite, is_purely_infinite_bruteforce, properly_infinite_vertex, torus_corners,
)
from ckgraph.graph import DirectedGraph, Edge, simple_cycles, cycle_has_exit
from ckgraph.ideals import enumerate_hereditary_saturated, quotient_graph
from ckgraph.presentations import AdjacencyMatrix
from conftest import graph_from, graphs, random_no_sink_graph

O2 = DirectedGraph(["v"], [Edge("e", "v", "v"), Edge("f", "v", "v")])
LOOP = graph_from("v>v")
U_FEEDS_W = DirectedGraph(["u", "w"], [Edge("a", "u", "u"), Edge("b", "u", "u"),
                                       Edge("c", "u", "w"), Edge("d", "w", "w")])


def test_af_examples():
    assert is_af(graph_from("v1>v2 v2>v3")).yes
    v = is_af(AdjacencyMatrix.from_rows([[1, 1], [1, 1]]))
    assert v.no and v.certificate["has_exit"]
    assert is_af(O2).no
    z = is_af(AdjacencyMatrix.from_rows([[0, 1], [0, 0]]))
    assert z.unknown and z.certificate["zero_rows"] == [2]


def test_torus_examples():
    assert [t.period for t in torus_corners(LOOP)] == [1]
    assert torus_corners(O2) == []
    assert [t.period for t in torus_corners(graph_from("a>b b>c c>a"))] == [3]


def test_pi_examples():
    assert is_purely_infinite(O2).yes
    v = is_purely_infinite(LOOP)
    assert v.no and v.certificate["cycle"]["edges"] == ["e0"]
    v = is_purely_infinite(U_FEEDS_W)
    assert v.no and v.certificate["H"] == [] and v.certificate["vertex"] == "w"
    assert is_purely_infinite(graph_from("a>b")).unknown


def test_pi_needs_quotient():
    # a's loop only exits into b, so it becomes exit-free modulo {b}
    g = graph_from("a>a a>b b>b b>b")
    v = is_purely_infinite(g)
    assert v.no and v.certificate["H"] == ["b"] and v.certificate["vertex"] == "a"


def test_properly_infinite_examples():
    assert properly_infinite_vertex(O2, "v").yes
    assert properly_infinite_vertex(LOOP, "v").no
    assert properly_infinite_vertex(U_FEEDS_W, "u").yes
    assert properly_infinite_vertex(U_FEEDS_W, "w").no


def test_efficient_matches_lattice_walk_random():
    rng = random.Random(13)
    for _ in range(200):
        g = random_no_sink_graph(rng, rng.randint(1, 8), rng.uniform(0.05, 0.3))
        assert is_purely_infinite(g).yes == is_purely_infinite_bruteforce(g)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6, no_sinks=True))
def test_pi_implies_no_torus_in_any_quotient(g):
    if is_purely_infinite(g).yes:
        for h in enumerate_hereditary_saturated(g):
            assert torus_corners(quotient_graph(g, h)) == []


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6))
def test_torus_corners_match_cycle_enumeration(g):
    exit_free = sorted(len(c) for c in simple_cycles(g) if not cycle_has_exit(g, c))
    assert sorted(t.period for t in torus_corners(g)) == exit_free
    assert (is_af(g).yes) == (simple_cycles(g) == [])
