import itertools
import random

import pytest

from ckgraph.classify import is_af
from ckgraph.graph import GraphError, reachable_from
from ckgraph.presentations import AdjacencyMatrix
from ckgraph.shiftspace import (
    Cylinder, CylinderError, Relation, ZeroRowError, contraction_witness, cylinder, cylinder_compare,
    graph_of_matrix, markov_classify, shift_image, union_relation, verify_contraction,
)

ONES = AdjacencyMatrix.from_rows([[1, 1], [1, 1]])
ID2 = AdjacencyMatrix.from_rows([[1, 0], [0, 1]])
SWAP = AdjacencyMatrix.from_rows([[0, 1], [1, 0]])


def random_matrix(rng, n, p=0.4):
    rows = [[int(rng.random() < p) for _ in range(n)] for _ in range(n)]
    for r in rows:
        if not any(r):
            r[rng.randrange(n)] = 1
    return AdjacencyMatrix.from_rows(rows)


def words(A, max_len):
    for L in range(1, max_len + 1):
        for w in itertools.product(range(1, A.n + 1), repeat=L):
            if all(A(a, b) for a, b in zip(w, w[1:])):
                yield Cylinder(w)


def test_graph_of_matrix_examples():
    assert sorted((e.source, e.range) for e in graph_of_matrix(ID2).edges) == [("1", "1"), ("2", "2")]
    assert len(graph_of_matrix(ONES).edges) == 4
    assert sorted((e.source, e.range) for e in graph_of_matrix(SWAP).edges) == [("1", "2"), ("2", "1")]


def test_shift_image_examples():
    assert shift_image(ONES, Cylinder((1, 2)), 1) == {Cylinder((2,))}
    assert shift_image(ONES, Cylinder((1,)), 1) == {Cylinder((1,)), Cylinder((2,))}
    assert shift_image(ONES, Cylinder((1, 2)), 0) == {Cylinder((1, 2))}
    with pytest.raises(ZeroRowError):
        shift_image(AdjacencyMatrix.from_rows([[0, 1], [0, 0]]), Cylinder((1,)), 1)
    with pytest.raises(CylinderError):
        cylinder(SWAP, [1, 1])


def test_cylinder_compare_examples():
    assert cylinder_compare(ONES, Cylinder((1, 2)), Cylinder((1,))) is Relation.STRICT_SUBSET
    assert cylinder_compare(ONES, Cylinder((1,)), Cylinder((1, 2))) is Relation.STRICT_SUPERSET
    assert cylinder_compare(ONES, Cylinder((1, 2)), Cylinder((1, 2))) is Relation.EQUAL
    assert cylinder_compare(ONES, Cylinder((1,)), Cylinder((2,))) is Relation.DISJOINT
    # 1 can only step to 2, so the longer word adds nothing
    assert cylinder_compare(SWAP, Cylinder((1, 2, 1)), Cylinder((1,))) is Relation.EQUAL


def test_compare_matches_expansion():
    rng = random.Random(5)
    for _ in range(30):
        A = random_matrix(rng, rng.randint(1, 4))
        ws = list(words(A, 3))
        for a, b in itertools.product(ws, repeat=2):
            assert cylinder_compare(A, a, b).value == union_relation(A, [a], [b])


def test_shift_semigroup_law():
    rng = random.Random(9)
    for _ in range(25):
        A = random_matrix(rng, rng.randint(1, 4))
        for c in words(A, 4):
            for a in range(0, 5):
                for b in range(0, 5):
                    two = set().union(*(shift_image(A, d, b) for d in shift_image(A, c, a)))
                    assert union_relation(A, two, shift_image(A, c, a + b)) == "equal"


def test_contraction_examples():
    w = contraction_witness(ONES, 1)
    assert verify_contraction(ONES, w) and w.n != w.m
    B = AdjacencyMatrix.from_rows([[0, 1], [1, 1]])
    w = contraction_witness(B, 1)
    assert (w.W.word, w.n, w.m) == ((1, 2, 2), 1, 2)
    with pytest.raises(GraphError):
        contraction_witness(AdjacencyMatrix.from_rows([[1]]), 1)


def test_contraction_random():
    rng = random.Random(21)
    checked = 0
    for _ in range(50):
        A = random_matrix(rng, rng.randint(1, 6))
        for v in range(1, A.n + 1):
            try:
                w = contraction_witness(A, v)
            except GraphError:
                continue
            checked += 1
            (inner,), (outer,) = shift_image(A, w.W, w.n), shift_image(A, w.W, w.m)
            assert cylinder_compare(A, inner, outer) is Relation.STRICT_SUBSET
            assert verify_contraction(A, w)
    assert checked > 50


def test_markov_classify_examples():
    r = markov_classify(ONES)
    assert r["af"].no and r["isolated_periodic"] == []
    assert all(v.yes for v in r["aperiodic_point"].values())
    r = markov_classify(ID2)
    assert r["af"].no and [t.period for t in r["isolated_periodic"]] == [1, 1]
    assert not any(v.yes for v in r["aperiodic_point"].values())
    with pytest.raises(ZeroRowError):
        markov_classify(AdjacencyMatrix.from_rows([[0, 1, 1], [0, 0, 1], [0, 0, 0]]))
    assert markov_classify(AdjacencyMatrix.from_rows([[0, 1, 1], [0, 0, 1], [0, 0, 1]]))["af"].no


def test_markov_af_matches_classify():
    rng = random.Random(2)
    for _ in range(150):
        A = random_matrix(rng, rng.randint(1, 6), rng.uniform(0.1, 0.5))
        assert markov_classify(A)["af"].value == is_af(graph_of_matrix(A)).value


def closed_walk_oracle(A, v):
    """Some vertex reachable from ``v`` carries two closed walks of equal
    length <= 2n^2 + n (counted by the diagonal of A^L)."""
    n = A.n
    rows = [[A(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    reach = {int(x) for x in reachable_from(graph_of_matrix(A), str(v))}
    P = [r[:] for r in rows]
    for _ in range(2 * n * n + n):
        if any(P[u - 1][u - 1] >= 2 for u in reach):
            return True
        P = [[sum(P[i][k] * rows[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return False


def test_aperiodic_points_oracle():
    rng = random.Random(4)
    for _ in range(150):
        A = random_matrix(rng, rng.randint(1, 5), rng.uniform(0.1, 0.5))
        got = markov_classify(A)["aperiodic_point"]
        for v in range(1, A.n + 1):
            assert got[v].yes == closed_walk_oracle(A, v)
