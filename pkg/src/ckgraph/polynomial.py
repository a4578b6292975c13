"""Exact real-algebraic helpers on top of sympy.

Everything here works with rational polynomials and isolating intervals; no
floating point value ever decides a comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy as sp

X = sp.Symbol("x")


def to_sympy(a) -> sp.Rational:
    a = Fraction(a)
    return sp.Rational(a.numerator, a.denominator)


def to_fraction(a) -> Fraction:
    a = sp.Rational(a)
    return Fraction(int(a.p), int(a.q))


def poly(expr) -> sp.Poly:
    return sp.Poly(expr, X, domain="QQ")


def charpoly(M: Sequence[Sequence]) -> sp.Poly:
    n = len(M)
    if n == 0:
        return poly(1)
    m = sp.Matrix([[to_sympy(a) for a in row] for row in M])
    return poly(m.charpoly(X).as_expr())


def real_roots_above(p: sp.Poly, bound) -> int:
    """Number of distinct real roots strictly greater than ``bound``."""
    q = p.sqf_part()
    if q.degree() <= 0:
        return 0
    b = to_sympy(bound)
    return int(q.count_roots(b, None)) - (1 if q.eval(b) == 0 else 0)


def sturm_sequence(p: sp.Poly) -> list[sp.Poly]:
    return [poly(s.as_expr()) for s in sp.sturm(p)]


def sign_changes_at(seq: list[sp.Poly], a) -> int:
    vals = [s.eval(to_sympy(a)) for s in seq]
    vals = [v for v in vals if v != 0]
    return sum(1 for u, v in zip(vals, vals[1:]) if (u > 0) != (v > 0))


class RealRoot:
    """A real root of a squarefree rational polynomial, pinned by an isolating
    interval ``[lo, hi]`` that contains no other root."""

    def __init__(self, p: sp.Poly, lo, hi):
        self.p = p.sqf_part()
        self.lo = sp.Rational(lo)
        self.hi = sp.Rational(hi)
        # Neighbouring isolating intervals may share an endpoint that is itself
        # a root; pull both endpoints inward until the root sits strictly inside.
        if self.lo < self.hi and (self.p.eval(self.lo) == 0 or self.p.eval(self.hi) == 0):
            w = self.hi - self.lo
            k = 1
            while True:
                a, b = self.lo + w / 2**k, self.hi - w / 2**k
                if self.p.eval(a) != 0 and self.p.eval(b) != 0 and self.p.count_roots(a, b) == 1:
                    self.lo, self.hi = a, b
                    break
                k += 1

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def refine(self) -> None:
        if self.is_exact():
            return
        mid = (self.lo + self.hi) / 2
        if self.p.eval(mid) == 0:
            self.lo = self.hi = mid
        elif self.p.count_roots(self.lo, mid) > 0:
            self.hi = mid
        else:
            self.lo = mid

    def is_root_of(self, q: sp.Poly) -> bool:
        g = sp.gcd(self.p, q)
        if g.degree() <= 0:
            return False
        return g.count_roots(self.lo, self.hi) > 0

    def sign_of(self, q: sp.Poly) -> int:
        """Sign of ``q`` at this root."""
        if q.is_zero:
            return 0
        if self.is_root_of(q):
            return 0
        while not self.is_exact() and q.count_roots(self.lo, self.hi) > 0:
            self.refine()
        v = q.eval(self.hi)
        return 1 if v > 0 else -1

    def minimal_factor(self) -> sp.Poly:
        for f, _ in sp.factor_list(self.p)[1]:
            f = poly(f.as_expr())
            if f.degree() > 0 and f.count_roots(self.lo, self.hi) > 0:
                return f.monic()
        raise ArithmeticError("root has no factor")

    def interval(self) -> tuple[Fraction, Fraction]:
        return to_fraction(self.lo), to_fraction(self.hi)

    def __repr__(self) -> str:
        return f"RealRoot({self.p.as_expr()}, [{self.lo}, {self.hi}])"


def largest_real_root(p: sp.Poly) -> RealRoot | None:
    q = p.sqf_part()
    if q.degree() <= 0:
        return None
    ivs = q.intervals()
    if not ivs:
        return None
    (lo, hi), _ = max(ivs, key=lambda t: (t[0][1], t[0][0]))
    return RealRoot(q, lo, hi)


def compare_roots(a: RealRoot, b: RealRoot) -> int:
    """-1, 0 or 1 as ``a <, =, > b``."""
    ga, gb = a.is_root_of(b.p), b.is_root_of(a.p)
    if ga and gb:
        # each interval holds exactly one root of the common factor
        g = sp.gcd(a.p, b.p)
        while True:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo > hi:
                return -1 if a.hi < b.lo else 1
            if g.count_roots(lo, hi) > 0:
                return 0
            a.refine()
            b.refine()
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if a.is_exact() and b.is_exact():
            return (a.lo > b.lo) - (a.lo < b.lo)
        a.refine()
        b.refine()


class NumberField:
    """Arithmetic in ``Q[x] / (f)`` for an irreducible ``f``."""

    def __init__(self, f: sp.Poly):
        self.f = f

    def reduce(self, q) -> sp.Poly:
        return poly(q).rem(self.f) if not isinstance(q, sp.Poly) else q.rem(self.f)

    def mul(self, a: sp.Poly, b: sp.Poly) -> sp.Poly:
        return (a * b).rem(self.f)

    def inv(self, a: sp.Poly) -> sp.Poly:
        return poly(sp.invert(a.as_expr(), self.f.as_expr(), X))

    def power(self, a: sp.Poly, k: int) -> sp.Poly:
        if k < 0:
            a, k = self.inv(a), -k
        r = poly(1)
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def is_zero(self, a: sp.Poly) -> bool:
        return a.rem(self.f).is_zero


def poly_str(p: sp.Poly) -> str:
    return str(p.as_expr())
