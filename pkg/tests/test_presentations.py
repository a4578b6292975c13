import random

import pytest
from hypothesis import given, settings

from ckgraph.graph import GraphError
from ckgraph.presentations import (
    AdjacencyMatrix, ParseError, PeriodicPresentation, Realization, graph_of_matrix, parse, parse_periodic,
    realize_truncation, serialize, sniff_format,
)
from conftest import graphs, random_presentation

CHAIN = """[stem]
vertex s
[block]
vertex b
[cross]
edge up b b +1
edge down b b -1
[stem-block]
edge in s b to-block
edge out s b to-stem
"""


def shape(g):
    return g.vertices, tuple((e.id, e.source, e.range) for e in g.edges)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6))
def test_edgelist_round_trip(g):
    assert shape(parse(serialize(g), "edgelist").obj) == shape(g)


def test_periodic_round_trip():
    rng = random.Random(1)
    for _ in range(50):
        p = random_presentation(rng, ns=rng.randint(0, 2), nb=rng.randint(1, 3))
        q = parse(serialize(p), "periodic").obj
        assert serialize(q) == serialize(p)
        assert shape(realize_truncation(q, 4)) == shape(realize_truncation(p, 4))


def test_matrix_parse_and_graph():
    A = parse("matrix 2\n0 1\n1 1\n", "matrix").obj
    assert A(1, 2) == 1 and A(1, 1) == 0 and A.successors(2) == [1, 2]
    g = graph_of_matrix(A)
    assert g.vertices == ("1", "2") and len(g.edges) == 3
    assert parse("matrix 2\n0 1\n0 0\n", "matrix").graph_class.no_zero_rows is False


@pytest.mark.parametrize("text,fmt,line,col", [
    ("vertex a\nedge e a b\n", "edgelist", 2, 10),
    ("vertex a\nfoo a\n", "edgelist", 2, 1),
    ("matrix 2\n0 1\n1 2\n", "matrix", 3, 3),
    ("matrix 2\n0 1\n", "matrix", 3, 1),
    ("[block]\nvertex b\n[cross]\nedge u b c +1\n", "periodic", 4, 10),
    ("[block]\nvertex b\n[cross]\nedge u b b +2\n", "periodic", 4, 12),
    ("vertex x\n", "periodic", 1, 1),
])
def test_parse_errors_carry_position(text, fmt, line, col):
    with pytest.raises(ParseError) as info:
        parse(text, fmt)
    assert (info.value.line, info.value.column) == (line, col)


def test_presentation_validation():
    with pytest.raises(ParseError):
        parse_periodic("[stem]\nvertex s\n[block]\n")
    with pytest.raises(GraphError):
        sniff_format("graph.txt")
    assert sniff_format("x.period") == "periodic"


def test_chain_truncation_counts():
    p = parse(CHAIN, "periodic").obj
    g = realize_truncation(p, 4)
    assert len(g.vertices) == 5 and len(g.edges) == 8 and g.truncated
    with pytest.raises(GraphError):
        realize_truncation(p, 0)


def test_realization_edges_are_symmetric():
    rng = random.Random(8)
    for _ in range(40):
        p = random_presentation(rng, ns=rng.randint(0, 2), nb=rng.randint(1, 3))
        r = Realization(p)
        for v in r.vertices_upto(4):
            for eid, w in r.out_edges(v):
                assert (eid, v) in r.in_edges(w)
            for eid, w in r.in_edges(v):
                assert (eid, v) in r.out_edges(w)


def test_graph_class_flags():
    assert parse(CHAIN, "periodic").graph_class.no_sinks
    fin = parse("vertex a\nvertex b\nedge e a b\n", "edgelist")
    assert not fin.graph_class.no_sinks and fin.graph_class.row_finite
    assert isinstance(parse(CHAIN, "periodic").obj, PeriodicPresentation)
    assert isinstance(parse("matrix 1\n1\n", "matrix").obj, AdjacencyMatrix)


def test_matrix_round_trip_and_edges_exhaustive():
    rng = random.Random(12)
    for n in range(0, 7):
        for _ in range(20):
            A = AdjacencyMatrix.from_rows([[int(rng.random() < 0.4) for _ in range(n)] for _ in range(n)])
            assert parse(serialize(A), "matrix").obj == A
            g = graph_of_matrix(A)
            pairs = {(e.source, e.range) for e in g.edges}
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert ((str(i), str(j)) in pairs) == bool(A(i, j))
            assert len(g.edges) == len(pairs)


def test_truncations_nest():
    rng = random.Random(13)
    for _ in range(30):
        p = random_presentation(rng, ns=rng.randint(0, 2), nb=rng.randint(1, 3))
        for K in range(1, 6):
            small, big = realize_truncation(p, K), realize_truncation(p, K + 1)
            assert shape(big.induced(small.vertices)) == shape(small)
