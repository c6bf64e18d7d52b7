"""
The operator M(q, t1, t2), quantum multiplication by the divisor M_D, the
Calogero-Sutherland operator in Fock form, and the t -> infinity limit.

Matrices use the column convention: column mu is the image of |mu>.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache

from .exact import ONE, Q, T1, T2, ZERO, RatFunc, series_expand
from .fock import FockVector, alpha_apply, alpha_word, basis_vector, norm
from .linalg import charpoly, matmul
from .partitions import Partition, c_lambda, enumerate_partitions

__all__ = [
    "OperatorMatrix", "ratio", "build_M", "build_MD", "build_cs", "cs_check",
    "duality_check", "limiting_operator", "integrality_check",
    "eigenvalue_check", "classical_charpoly", "selfadjoint_check",
    "nonvanishing_check", "offdiagonal_q_free_check",
]


@dataclass(frozen=True)
class OperatorMatrix:
    n: int
    basis: tuple[Partition, ...]
    entries: tuple[tuple[RatFunc, ...], ...]

    @classmethod
    def from_columns(cls, n: int, columns: list[FockVector]) -> "OperatorMatrix":
        basis = enumerate_partitions(n)
        rows = tuple(tuple(col[mu] for col in columns) for mu in basis)
        return cls(n, basis, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def entry(self, row, col) -> RatFunc:
        i = self.basis.index(Partition(row))
        j = self.basis.index(Partition(col))
        return self.entries[i][j]

    def column(self, mu) -> FockVector:
        j = self.basis.index(Partition(mu))
        return FockVector(self.n, {nu: self.entries[i][j] for i, nu in enumerate(self.basis)})

    def apply(self, v: FockVector) -> FockVector:
        if v.n != self.n:
            raise ValueError(f"energy mismatch: {v.n} != {self.n}")
        out = FockVector(self.n)
        for mu, c in v.coeffs.items():
            out = out + self.column(mu) * c
        return out

    def map(self, fn) -> "OperatorMatrix":
        return OperatorMatrix(self.n, self.basis,
                              tuple(tuple(fn(a) for a in row) for row in self.entries))

    def at_q0(self) -> "OperatorMatrix":
        return self.map(lambda a: a.at_q(0))

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.n, self.basis, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        prod = matmul(self.entries, other.entries)
        return OperatorMatrix(self.n, self.basis, tuple(tuple(r) for r in prod))

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def to_json(self, expand: int | None = None) -> str:
        def render(a):
            return [str(c) for c in series_expand(a, expand)] if expand is not None else str(a)
        return json.dumps({
            "n": self.n,
            "basis": [str(mu) for mu in self.basis],
            "convention": "column mu is the image of |mu>",
            "entries": [[render(a) for a in row] for row in self.entries],
        }, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(mu) for mu in self.basis])
        for mu, row in zip(self.basis, self.entries):
            w.writerow([str(mu)] + [str(a) for a in row])
        return buf.getvalue()


def ratio(k: int) -> RatFunc:
    """((-q)^k + 1) / ((-q)^k - 1)."""
    x = (-Q) ** k
    return (x + 1) / (x - 1)


def _cubic_terms(n: int):
    """(k, l) with k, l > 0 and k + l <= n; larger terms kill energy-n states."""
    return [(k, l) for k in range(1, n) for l in range(1, n - k + 1)]


def _quadratic_parts(n: int, coeff) -> list[FockVector]:
    cols = []
    for mu in enumerate_partitions(n):
        v = basis_vector(mu)
        out = FockVector(n)
        for k in set(mu):
            out = out + alpha_word((-k, k), v) * coeff(k)
        cols.append(out)
    return cols


@lru_cache(maxsize=None)
def build_M(n: int) -> OperatorMatrix:
    """Matrix of M on the energy-n subspace."""
    if n == 0:
        return OperatorMatrix(0, (Partition(),), ((ZERO,),))
    s = T1 + T2
    diag = _quadratic_parts(n, lambda k: s * RatFunc(k, 2) * ratio(k))
    cols = []
    half = RatFunc(1, 2)
    for mu, d in zip(enumerate_partitions(n), diag):
        v = basis_vector(mu)
        out = d
        for k, l in _cubic_terms(n):
            out = out + alpha_word((k + l, -k, -l), v) * (half * T1 * T2)
            out = out - alpha_word((-k - l, k, l), v) * half
        cols.append(out)
    return OperatorMatrix.from_columns(n, cols)


@lru_cache(maxsize=None)
def build_MD(n: int) -> OperatorMatrix:
    """M - (t1 + t2)/2 * ((-q) + 1)/((-q) - 1) * n on the energy-n block."""
    shift = (T1 + T2) / 2 * ratio(1) * n
    M = build_M(n)
    return OperatorMatrix(n, M.basis, tuple(
        tuple(a - shift if i == j else a for j, a in enumerate(row))
        for i, row in enumerate(M.entries)))


def build_cs(n: int, theta: RatFunc | None = None) -> OperatorMatrix:
    """Fock-space Calogero-Sutherland operator; theta defaults to -t2/t1."""
    if theta is None:
        theta = -T2 / T1
    half = RatFunc(1, 2)
    diag = _quadratic_parts(n, lambda k: (1 - theta) * half * k)
    cols = []
    for mu, d in zip(enumerate_partitions(n), diag):
        v = basis_vector(mu)
        out = d
        for k, l in _cubic_terms(n):
            out = out + alpha_word((-k - l, k, l), v) * half
            out = out + alpha_word((k + l, -k, -l), v) * (half * theta)
        cols.append(out)
    return OperatorMatrix.from_columns(n, cols)


def _conjugated_cs(n: int, t: RatFunc, theta: RatFunc) -> OperatorMatrix:
    """-t^(l(.)+1) Delta_CS t^(-l(.))."""
    cs = build_cs(n, theta)
    return OperatorMatrix(n, cs.basis, tuple(
        tuple(-(t ** (row_mu.length + 1)) * a / t ** col_mu.length
              for col_mu, a in zip(cs.basis, row))
        for row_mu, row in zip(cs.basis, cs.entries)))


def cs_check(n: int) -> tuple[bool, OperatorMatrix]:
    """Compare M(0) with the conjugated Calogero-Sutherland operator.

    Returns (equal, difference matrix).
    """
    diff = build_M(n).at_q0() - _conjugated_cs(n, T1, -T2 / T1)
    return diff.is_zero(), diff


def duality_check(n: int) -> tuple[bool, OperatorMatrix]:
    """theta -> 1/theta: the conjugation built on t2 reproduces M(0) with t1, t2 swapped."""
    swapped = build_M(n).at_q0().map(RatFunc.swap_t)
    diff = swapped - _conjugated_cs(n, T2, -T1 / T2)
    return diff.is_zero(), diff


def limiting_operator(n: int) -> OperatorMatrix:
    """lim_{t -> oo} M_D(q, t, 1/t) / t, diagonal in the |mu> basis.

    The entry for mu is sum_i mu_i [(mu_i / 2) r(mu_i) - r(1) / 2], where
    r(k) = ((-q)^k + 1)/((-q)^k - 1) and mu_i is the alpha_{-k} alpha_k
    eigenvalue weight.
    """
    basis = enumerate_partitions(n)
    diag = []
    for mu in basis:
        acc = ZERO
        for p in mu:
            acc = acc + p * (RatFunc(p, 2) * ratio(p) - ratio(1) / 2)
        diag.append(acc)
    return OperatorMatrix(n, basis, tuple(
        tuple(diag[i] if i == j else ZERO for j in range(len(basis)))
        for i in range(len(basis))))


def integrality_check(n: int, order: int):
    """Check every q-coefficient of M_D through q^order is in Z[t1, t2].

    Returns (True, None) or (False, (row, col, power, coefficient)).
    """
    MD = build_MD(n)
    for mu, row in zip(MD.basis, MD.entries):
        for nu, a in zip(MD.basis, row):
            for d, c in enumerate(series_expand(a, order)):
                if not c.is_integral():
                    return False, (mu, nu, d, c)
    return True, None


def classical_charpoly(n: int) -> list[RatFunc]:
    """Coefficients of det(x - M_D(0))."""
    return charpoly(build_MD(n).at_q0().entries)


def eigenvalue_check(n: int) -> bool:
    """det(x - M_D(0)) == prod over lambda of (x + c(lambda))."""
    expected = [ONE]
    for lam in enumerate_partitions(n):
        c = c_lambda(lam)
        # multiply by (x + c)
        nxt = [ZERO] * (len(expected) + 1)
        for i, a in enumerate(expected):
            nxt[i] = nxt[i] + a * c
            nxt[i + 1] = nxt[i + 1] + a
        expected = nxt
    return classical_charpoly(n) == expected


def selfadjoint_check(n: int):
    """<mu|mu> (M_D)_{mu nu} == <nu|nu> (M_D)_{nu mu}.

    Returns (True, None) or (False, (mu, nu)).
    """
    MD = build_MD(n)
    for i, mu in enumerate(MD.basis):
        for j, nu in enumerate(MD.basis[i + 1:], start=i + 1):
            if norm(mu) * MD.entries[i][j] != norm(nu) * MD.entries[j][i]:
                return False, (mu, nu)
    return True, None


def nonvanishing_check(n: int):
    """(M_D)_{mu nu} = 0 whenever the lengths differ by more than one."""
    MD = build_MD(n)
    for i, mu in enumerate(MD.basis):
        for j, nu in enumerate(MD.basis):
            if abs(mu.length - nu.length) > 1 and not MD.entries[i][j].is_zero():
                return False, (mu, nu)
    return True, None


def offdiagonal_q_free_check(n: int):
    MD = build_MD(n)
    for i, mu in enumerate(MD.basis):
        for j, nu in enumerate(MD.basis):
            if i != j and not MD.entries[i][j].is_q_free():
                return False, (mu, nu)
    return True, None
