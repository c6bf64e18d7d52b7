"""Exact linear algebra over Q(t1, t2, q) by fraction-free elimination."""

from __future__ import annotations

from typing import Sequence

from .exact import CTX, ONE, ZERO, RatFunc, rsum

__all__ = ["SingularMatrixError", "echelon", "solve", "kernel", "matmul",
           "matvec", "identity", "charpoly", "rank"]

_ZERO_P = CTX.from_dict({})
_ONE_P = CTX.constant(1)


class SingularMatrixError(ArithmeticError):
    pass


def _lcm(a, b):
    return a * (b / a.gcd(b))


def _clear_row(row: Sequence[RatFunc]) -> list:
    """Scale a row of RatFuncs to integer polynomials (row scaling only)."""
    den = _ONE_P
    for x in row:
        if not x.den.is_one():
            den = _lcm(den, x.den)
    return [x.num * (den / x.den) for x in row]


def echelon(rows: list[list], pivot_cols: int):
    """Bareiss fraction-free row echelon form of a polynomial matrix.

    Only the first ``pivot_cols`` columns are used for pivots; the remaining
    columns are carried along (augmented part).  Returns (rows, pivots).
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    width = len(rows[0]) if rows else 0
    prev = _ONE_P
    r = 0
    pivots = []
    for c in range(pivot_cols):
        if r == m:
            break
        # smallest nonzero pivot keeps the intermediate minors compact
        cands = [i for i in range(r, m) if not rows[i][c].is_zero()]
        if not cands:
            continue
        p = min(cands, key=lambda i: len(rows[i][c].to_dict()))
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            a = ri[c]
            for j in range(c + 1, width):
                val = pr[c] * ri[j]
                if not a.is_zero():
                    val = val - a * pr[j]
                ri[j] = val / prev if not prev.is_one() else val
            ri[c] = _ZERO_P
        prev = pr[c]
        pivots.append(c)
        r += 1
    return rows, pivots


def _back_substitute(rows, pivots, ncols, rhs_col=None, free=None) -> list[RatFunc]:
    x = [ZERO] * ncols
    if free is not None:
        x[free] = ONE
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        acc = RatFunc(rows[r][rhs_col]) if rhs_col is not None else ZERO
        for j in range(c + 1, ncols):
            if not rows[r][j].is_zero() and not x[j].is_zero():
                acc = acc - RatFunc(rows[r][j]) * x[j]
        x[c] = acc / RatFunc(rows[r][c])
    return x


def solve(A: Sequence[Sequence[RatFunc]], b: Sequence[RatFunc]) -> list[RatFunc]:
    """Unique solution x of A x = b for square nonsingular A."""
    n = len(A)
    rows = [_clear_row(list(A[i]) + [b[i]]) for i in range(n)]
    rows, pivots = echelon(rows, n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {n}")
    return _back_substitute(rows, pivots, n, rhs_col=n)


def rank(A: Sequence[Sequence[RatFunc]]) -> int:
    rows = [_clear_row(list(r)) for r in A]
    return len(echelon(rows, len(A[0]))[1])


def kernel(A: Sequence[Sequence[RatFunc]]) -> list[list[RatFunc]]:
    """Basis of the right null space, one vector per free column."""
    ncols = len(A[0])
    rows = [_clear_row(list(r)) for r in A]
    rows, pivots = echelon(rows, ncols)
    free_cols = [c for c in range(ncols) if c not in pivots]
    return [_back_substitute(rows, pivots, ncols, free=f) for f in free_cols]


def identity(n: int) -> list[list[RatFunc]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        out.append([rsum(A[i][l] * B[l][j] for l in range(k)
                         if not A[i][l].is_zero() and not B[l][j].is_zero())
                    for j in range(m)])
    return out


def matvec(A, x):
    return [rsum(a * b for a, b in zip(row, x) if not a.is_zero() and not b.is_zero())
            for row in A]


def charpoly(A) -> list[RatFunc]:
    """Coefficients [c_0, ..., c_n] of det(x I - A) for a polynomial matrix.

    Faddeev-LeVerrier on integer polynomials; every division is by an integer
    and exact.
    """
    n = len(A)
    if any(not a.is_polynomial() for row in A for a in row):
        raise ValueError("charpoly expects polynomial entries")
    # common integer denominator d: charpoly(A) from charpoly(d A)
    d = 1
    for row in A:
        for a in row:
            d = d * int(a.den.leading_coefficient()) // _igcd(d, int(a.den.leading_coefficient()))
    P = [[a.num * (d // int(a.den.leading_coefficient())) for a in row] for row in A]
    coeffs = [_ZERO_P] * (n + 1)
    coeffs[n] = _ONE_P
    Mk = [[_ZERO_P] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = P M_{k-1} + c_{n-k+1} I
        new = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = _ZERO_P
                for l in range(n):
                    if not P[i][l].is_zero() and not Mk[l][j].is_zero():
                        acc = acc + P[i][l] * Mk[l][j]
                if i == j:
                    acc = acc + coeffs[n - k + 1]
                row.append(acc)
            new.append(row)
        Mk = new
        tr = _ZERO_P
        for i in range(n):
            for l in range(n):
                if not P[i][l].is_zero() and not Mk[l][i].is_zero():
                    tr = tr + P[i][l] * Mk[l][i]
        coeffs[n - k] = -(tr / k)
    # undo the scaling: det(xI - A) = d^-n det(d x I - d A)
    return [RatFunc(c) / RatFunc(d) ** (n - i) for i, c in enumerate(coeffs)]


def _igcd(a, b):
    from math import gcd
    return gcd(a, b)
