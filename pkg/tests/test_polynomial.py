from fractions import Fraction as F

import numpy as np
import sympy as sp
from hypothesis import given, settings, strategies as st

from ckgraph.polynomial import (
    X, NumberField, charpoly, compare_roots, largest_real_root, poly, real_roots_above,
    sign_changes_at, sturm_sequence,
)


def test_charpoly_and_roots():
    p = charpoly([[2]])
    assert p == poly(X - 2)
    assert real_roots_above(p, 1) == 1
    assert real_roots_above(charpoly([[1, 1], [0, 1]]), 1) == 0
    assert real_roots_above(poly(X - 1), 1) == 0


def test_sturm_counts_match_sympy():
    p = poly((X - 3) * (X + 1) * (X**2 - 2))
    seq = sturm_sequence(p)
    assert sign_changes_at(seq, 0) - sign_changes_at(seq, 10) == 2


def test_largest_root_and_sign():
    r = largest_real_root(poly(X**2 - 2))
    assert r.sign_of(poly(X - F(141, 100))) == 1
    assert r.sign_of(poly(X - F(142, 100))) == -1
    assert r.sign_of(poly(X**2 - 2)) == 0
    assert r.minimal_factor() == poly(X**2 - 2)


def test_compare_roots():
    a = largest_real_root(poly(X**2 - 2))
    b = largest_real_root(poly((X**2 - 2) * (X + 5)))
    c = largest_real_root(poly(X**2 - 3))
    assert compare_roots(a, b) == 0
    assert compare_roots(a, c) == -1 and compare_roots(largest_real_root(poly(X**2 - 3)), largest_real_root(poly(X**2 - 2))) == 1


def test_number_field():
    K = NumberField(poly(X**2 - 2))
    r2 = poly(X)
    assert K.is_zero(K.mul(r2, r2) - poly(2))
    assert K.is_zero(K.mul(r2, K.inv(r2)) - poly(1))
    assert K.is_zero(K.power(r2, -2) - poly(F(1, 2)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_spectral_radius_vs_numpy(M):
    # numeric eigenvalues serve only as an independent oracle here
    rho = max(abs(np.linalg.eigvals(np.array(M, dtype=float))))
    p = charpoly(M)
    above = real_roots_above(p, 1)
    if rho > 1 + 1e-9:
        assert above >= 1
    elif rho < 1 - 1e-9:
        assert above == 0
    r = largest_real_root(p)
    if r is not None and r.p.degree() > 0:
        while r.hi - r.lo > sp.Rational(1, 10**6):
            r.refine()
        # the Perron root is the largest real eigenvalue
        assert abs(float(r.hi) - rho) < 1e-5
