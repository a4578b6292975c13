import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ckgraph.exact_lp import (
    DimensionError, RationalLinearSystem, check_farkas, check_witness,
    feasible_nonnegative, rational_rank,
)


def solve_square(A, b):
    """Gauss-Jordan on a square system; None when singular."""
    n = len(A)
    T = [list(map(F, r)) + [F(bi)] for r, bi in zip(A, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if T[i][c] != 0), None)
        if p is None:
            return None
        T[c], T[p] = T[p], T[c]
        T[c] = [a / T[c][c] for a in T[c]]
        for i in range(n):
            if i != c and T[i][c]:
                f = T[i][c]
                T[i] = [a - f * x for a, x in zip(T[i], T[c])]
    return [T[i][-1] for i in range(n)]


def vertex_enumeration_feasible(M, b):
    """Oracle: a nonempty polyhedron {Mx=b, x>=0} has a basic feasible solution.

    Reduce to independent rows, then try every column subset of that size.
    """
    m, n = len(M), len(M[0])
    rows = []
    for i in range(m):
        if rational_rank([M[k] + [b[k]] for k in rows + [i]]) > len(rows):
            rows.append(i)
    if rational_rank([M[i] for i in rows]) < rational_rank([M[i] + [b[i]] for i in rows]):
        return False
    if rational_rank([M[i] + [b[i]] for i in range(m)]) != rational_rank([M[i] for i in range(m)]):
        return False
    r = len(rows)
    if r == 0:
        return True
    for cols in itertools.combinations(range(n), r):
        sol = solve_square([[M[i][c] for c in cols] for i in rows], [b[i] for i in rows])
        if sol is not None and all(v >= 0 for v in sol):
            return True
    return False


def test_examples():
    # x = 2x and x = 1
    s = RationalLinearSystem.of([[-1], [1]], [0, 1])
    r = feasible_nonnegative(s)
    assert not r.feasible and check_farkas(s, r.y)
    s = RationalLinearSystem.of([[1, -1], [1, 1]], [0, 1])
    r = feasible_nonnegative(s)
    assert r.feasible and r.x == (F(1, 2), F(1, 2))


def test_empty_and_errors():
    assert feasible_nonnegative(RationalLinearSystem.of([], [], ncols=3)).x == (0, 0, 0)
    with pytest.raises(DimensionError):
        RationalLinearSystem.of([[1, 2]], [1, 2])
    with pytest.raises(DimensionError):
        RationalLinearSystem.of([[1, 2], [1]], [1, 2])


def test_negative_rhs():
    s = RationalLinearSystem.of([[-1, -1]], [-3])
    r = feasible_nonnegative(s)
    assert r.feasible and check_witness(s, r.x)
    s = RationalLinearSystem.of([[1, 1]], [-3])
    r = feasible_nonnegative(s)
    assert not r.feasible and check_farkas(s, r.y)


def test_degenerate_cycling_prone():
    # Beale-style degenerate system; Bland's rule must terminate
    M = [[F(1, 4), -8, -1, 9, 1, 0, 0], [F(1, 2), -12, F(-1, 2), 3, 0, 1, 0], [0, 0, 1, 0, 0, 0, 1]]
    s = RationalLinearSystem.of(M, [0, 0, 1])
    assert feasible_nonnegative(s).feasible


def test_agrees_with_vertex_enumeration():
    rng = random.Random(3)
    for _ in range(300):
        m, n = rng.randint(1, 4), rng.randint(1, 6)
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-3, 3) for _ in range(m)]
        s = RationalLinearSystem.of(M, b)
        r = feasible_nonnegative(s)
        assert r.verify(s)
        assert r.feasible == vertex_enumeration_feasible(M, b)


small = st.integers(-4, 4)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m),
                        st.lists(small, min_size=m, max_size=m)))))
def test_certificates_always_verify(mb):
    M, b = mb
    s = RationalLinearSystem.of(M, b)
    assert feasible_nonnegative(s).verify(s)


def test_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rational_rank([]) == 0
