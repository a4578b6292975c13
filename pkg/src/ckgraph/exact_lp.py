"""Exact feasibility of ``M x = b, x >= 0`` over the rationals.

Phase-1 simplex on a dense Fraction tableau with Bland's rule.  Every answer
carries a certificate that is checked by substitution before it is returned:
either a witness ``x`` or a Farkas vector ``y`` with ``y^T M <= 0`` and
``y^T b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class RationalLinearSystem:
    M: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    ncols: int

    @classmethod
    def of(cls, M: Matrix, b: Sequence, ncols: int | None = None) -> "RationalLinearSystem":
        rows = tuple(tuple(Fraction(a) for a in r) for r in M)
        if len(rows) != len(b):
            raise DimensionError(f"{len(rows)} rows but {len(b)} right-hand sides")
        widths = {len(r) for r in rows}
        if ncols is None:
            if not rows:
                raise DimensionError("ncols required for a system with no rows")
            if len(widths) > 1:
                raise DimensionError("ragged matrix")
            ncols = widths.pop()
        elif widths and widths != {ncols}:
            raise DimensionError(f"rows must have {ncols} entries")
        return cls(rows, tuple(Fraction(x) for x in b), ncols)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    y: tuple[Fraction, ...] | None = None

    def verify(self, sys: RationalLinearSystem) -> bool:
        if self.feasible:
            return check_witness(sys, self.x)
        return check_farkas(sys, self.y)


def check_witness(sys: RationalLinearSystem, x) -> bool:
    if x is None or len(x) != sys.ncols or any(v < 0 for v in x):
        return False
    return all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(sys.M, sys.b))


def check_farkas(sys: RationalLinearSystem, y) -> bool:
    if y is None or len(y) != len(sys.M):
        return False
    for j in range(sys.ncols):
        if sum(y[i] * sys.M[i][j] for i in range(len(sys.M))) > 0:
            return False
    return sum(yi * bi for yi, bi in zip(y, sys.b)) > 0


def feasible_nonnegative(sys: RationalLinearSystem) -> FeasibilityResult:
    m, n = len(sys.M), sys.ncols
    if m == 0:
        return FeasibilityResult(True, x=(Fraction(0),) * n)
    sign = [(-1 if bi < 0 else 1) for bi in sys.b]
    # columns: 0..n-1 original, n..n+m-1 artificial, last = rhs
    T = []
    for i in range(m):
        row = [sign[i] * a for a in sys.M[i]]
        row += [Fraction(int(i == k)) for k in range(m)]
        row.append(sign[i] * sys.b[i])
        T.append(row)
    basis = list(range(n, n + m))
    # reduced-cost row for min sum(artificials); entry j = c_j - c_B B^-1 A_j
    cost = [Fraction(0)] * (n + m + 1)
    for j in range(n, n + m):
        cost[j] = Fraction(1)
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] -= T[i][j]

    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        # phase 1 is bounded below by 0, so a pivot row always exists
        r = best[1]
        piv = T[r][enter]
        T[r] = [a / piv for a in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        f = cost[enter]
        cost = [a - f * c for a, c in zip(cost, T[r])]
        basis[r] = enter

    optimum = -cost[-1]
    if optimum == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = T[i][-1]
        res = FeasibilityResult(True, x=tuple(x))
    else:
        # artificial column n+i has reduced cost 1 - y_i
        y = tuple(sign[i] * (1 - cost[n + i]) for i in range(m))
        res = FeasibilityResult(False, y=y)
    if not res.verify(sys):
        raise ArithmeticError("simplex produced a certificate that does not verify")
    return res


def rational_rank(M: Matrix) -> int:
    rows = [[Fraction(a) for a in r] for r in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
