"""
Genus 0 invariants of Hilb_n(C^2) derived from M_D.

Three-point functions come from the quantum product, which is reconstructed
from M_D because D generates the quantum ring: every class is written as
P(M_D)|1^n> with P of degree < p(n) (Krylov coordinates).  Multipoint
invariants follow by the fundamental class, divisor and WDVV equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Sequence

from .exact import (ONE, Q, T1, T2, ZERO, LaurentU, QSeries, RatFunc,
                    laurent_u_substitute, s_expand, series_expand)
from .fock import (FockVector, basis_vector, divisor_class, gram_pair,
                   identity_class, norm)
from .jack import jack_vector
from .linalg import SingularMatrixError, solve
from .operators import OperatorMatrix, build_MD
from .partitions import Partition, character, enumerate_partitions, zmu

__all__ = [
    "InvariantSeries", "GammaWitness", "SingularKrylovError", "QuantumRing",
    "quantum_ring", "three_point_D", "quantum_multiply", "three_point",
    "poincare_dual", "multipoint", "fixed_structure", "gw_exponent",
    "gw_transform", "F_function", "fourier_fprime", "fourier_fprime_bruteforce",
    "jj_closed_form", "jj_check", "divisibility_check", "diagonal_shape_check",
    "addition_formula_check",
]


class SingularKrylovError(ArithmeticError):
    """D fails to generate the quantum ring at the chosen parameters."""


@dataclass(frozen=True)
class InvariantSeries:
    value: RatFunc
    n: int
    insertions: tuple = field(default=())

    def series(self, order: int) -> QSeries:
        return series_expand(self.value, order)


def _as_vector(x) -> FockVector:
    if isinstance(x, FockVector):
        return x
    return basis_vector(x)


class QuantumRing:
    """Small quantum ring of Hilb_n in Krylov coordinates.

    With ``t1``/``t2`` given (rationals) the equivariant parameters are
    specialized and only q stays symbolic.
    """

    def __init__(self, n: int, t1=None, t2=None):
        if n < 1:
            raise ValueError("need n >= 1")
        self.n = n
        self.t1, self.t2 = t1, t2
        MD = build_MD(n)
        if t1 is not None or t2 is not None:
            MD = MD.map(lambda a: a.specialize(t1=t1, t2=t2))
        self.MD = MD
        self.basis = MD.basis
        self.dim = len(self.basis)
        self._powers = [identity_class(n).map_coeffs(self.scalar)]
        self._krylov_cols = None

    def scalar(self, a) -> RatFunc:
        """Specialize a coefficient to this ring's parameters."""
        a = a if isinstance(a, RatFunc) else RatFunc(a)
        if self.t1 is None and self.t2 is None:
            return a
        return a.specialize(t1=self.t1, t2=self.t2)

    def vector(self, x) -> FockVector:
        return _as_vector(x).map_coeffs(self.scalar)

    def gram(self, a: FockVector, b: FockVector) -> RatFunc:
        return self.scalar(gram_pair(a, b)) if self.t1 is not None or self.t2 is not None \
            else gram_pair(a, b)

    def power(self, k: int) -> FockVector:
        """D^{*k} = M_D^k |1^n>."""
        while len(self._powers) <= k:
            self._powers.append(self.MD.apply(self._powers[-1]))
        return self._powers[k]

    def coordinates(self, v) -> list[RatFunc]:
        """Coefficients c_k with v = sum_k c_k D^{*k}, k < dim."""
        v = self.vector(v)
        A = [[self.power(k)[mu] for k in range(self.dim)] for mu in self.basis]
        try:
            return solve(A, v.to_list(self.basis))
        except SingularMatrixError as exc:
            raise SingularKrylovError(
                f"D^0..D^{self.dim - 1} are dependent for n={self.n} "
                f"at t1={self.t1}, t2={self.t2}: {exc}") from None

    def multiply(self, a, b) -> FockVector:
        a, b = self.vector(a), self.vector(b)
        out = FockVector(self.n)
        term = b
        for k, c in enumerate(self.coordinates(a)):
            if k:
                term = self.MD.apply(term)
            if not c.is_zero():
                out = out + term * c
        return out

    def three_point(self, a, b, c) -> RatFunc:
        return self.gram(self.multiply(a, b), self.vector(c))


@lru_cache(maxsize=None)
def quantum_ring(n: int, t1=None, t2=None) -> QuantumRing:
    return QuantumRing(n, t1, t2)


def three_point_D(mu, nu) -> InvariantSeries:
    """<mu, D, nu> = <mu | M_D | nu>."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        raise ValueError(f"size mismatch: {mu} vs {nu}")
    MD = build_MD(mu.size)
    return InvariantSeries(gram_pair(basis_vector(mu), MD.apply(basis_vector(nu))),
                           mu.size, (mu, "D", nu))


def quantum_multiply(a, b, t1=None, t2=None) -> FockVector:
    """Small quantum product a * b over Q(t1, t2, q) (or with t specialized)."""
    a, b = _as_vector(a), _as_vector(b)
    if a.n != b.n:
        raise ValueError(f"energy mismatch: {a.n} != {b.n}")
    return quantum_ring(a.n, t1, t2).multiply(a, b)


def three_point(lam, mu, nu, t1=None, t2=None) -> InvariantSeries:
    vs = [_as_vector(x) for x in (lam, mu, nu)]
    if len({v.n for v in vs}) != 1:
        raise ValueError("insertions must have equal size")
    value = quantum_ring(vs[0].n, t1, t2).three_point(*vs)
    return InvariantSeries(value, vs[0].n, tuple((lam, mu, nu)))


def poincare_dual(nu) -> FockVector:
    """nu / <nu|nu>, the class pairing to delta with the basis."""
    nu = Partition(nu)
    return basis_vector(nu) * norm(nu).inverse()


# ---------------------------------------------------------------------------
# Multipoint invariants
# ---------------------------------------------------------------------------

class _Multipoint:
    """Series <D^{*k_1}, ..., D^{*k_m}> with memoization on sorted exponents."""

    def __init__(self, ring: QuantumRing, order: int):
        self.ring = ring
        self.order = order
        N = ring.dim
        self.N = N
        unit = ring.power(0)
        self._h: dict[int, QSeries] = {}
        g = [[ring.gram(ring.power(a + b), unit) for b in range(N)] for a in range(N)]
        # copairing sum_nu nu (x) nu^vee in Krylov coordinates: inverse Gram
        cols = [solve(g, [ONE if i == j else ZERO for i in range(N)]) for j in range(N)]
        self.C = [[self._expand(cols[l][j]) for l in range(N)] for j in range(N)]
        # q d/dq of D^{*k} in Krylov coordinates
        self.E = []
        for k in range(N):
            dv = ring.power(k).map_coeffs(lambda a: Q * a.derivative("q"))
            self.E.append([self._expand(c) for c in ring.coordinates(dv)])
        self._memo: dict[tuple, QSeries] = {}

    def _expand(self, a: RatFunc) -> QSeries:
        return series_expand(a, self.order)

    def h(self, s: int) -> QSeries:
        if s not in self._h:
            self._h[s] = self._expand(self.ring.gram(self.ring.power(s), self.ring.power(0)))
        return self._h[s]

    def bracket(self, ks) -> QSeries:
        ks = tuple(sorted(ks))
        if ks in self._memo:
            return self._memo[ks]
        m = len(ks)
        if m < 3:
            raise ValueError("need at least 3 insertions")
        if m == 3:
            out = self.h(sum(ks))
        elif ks[0] == 0:
            out = QSeries.zero(self.order)
        elif 1 in ks:
            out = self.divisor(ks)
        else:
            out = self.wdvv(ks[0], ks[1], ks[2], ks[3:])
        self._memo[ks] = out
        return out

    def divisor(self, ks) -> QSeries:
        """<D, rest> = q d/dq <rest> minus the terms differentiating the
        q-dependent Krylov classes in rest."""
        rest = list(ks)
        rest.remove(1)
        out = self.bracket(rest).theta()
        for i, k in enumerate(rest):
            for j, e in enumerate(self.E[k]):
                if any(not c.is_zero() for c in e):
                    out = out - e * self.bracket(rest[:i] + [j] + rest[i + 1:])
        return out

    def _glue(self, left: list, right: list) -> QSeries:
        """sum_nu <left, nu> <nu^vee, right>."""
        out = QSeries.zero(self.order)
        for j in range(self.N):
            lj = self.bracket(left + [j])
            if all(c.is_zero() for c in lj):
                continue
            for l in range(self.N):
                c = self.C[j][l]
                if all(x.is_zero() for x in c):
                    continue
                out = out + c * lj * self.bracket([l] + right)
        return out

    def wdvv(self, k: int, a: int, b: int, rest: Sequence[int]) -> QSeries:
        """<D^{*k}, D^{*a}, D^{*b}, rest> for k >= 1 from the WDVV relation
        with points (D, D^{*(k-1)} | D^{*a}, D^{*b}) vs (D, D^{*a} | D^{*(k-1)}, D^{*b})."""
        rest = list(rest)
        idx = range(len(rest))
        out = QSeries.zero(self.order)
        for r in range(len(rest) + 1):
            for S1 in combinations(idx, r):
                s1 = [rest[i] for i in S1]
                s2 = [rest[i] for i in idx if i not in S1]
                out = out + self._glue([1, a] + s1, [k - 1, b] + s2)
                if s1:
                    out = out - self._glue([1, k - 1] + s1, [a, b] + s2)
        return out


def multipoint(insertions: Sequence, order: int, pivot: int | None = None,
               t1=None, t2=None) -> QSeries:
    """Genus 0 series <gamma_1, ..., gamma_m> through q^order.

    ``pivot`` selects the insertion that is split by WDVV at the top level
    (default: let the recursion choose the insertion of lowest D-degree).
    """
    vs = [_as_vector(x) for x in insertions]
    if len(vs) < 3:
        raise ValueError("need at least 3 insertions")
    n = vs[0].n
    if any(v.n != n for v in vs):
        raise ValueError("insertions must have equal size")
    ring = quantum_ring(n, t1, t2)
    mp = _Multipoint(ring, order)
    coords = [[series_expand(c, order) for c in ring.coordinates(v)] for v in vs]
    m = len(vs)

    def term(ks):
        if pivot is None or m == 3 or ks[pivot] < 2:
            return mp.bracket(ks)
        others = [ks[(pivot + i) % m] for i in range(1, m)]
        return mp.wdvv(ks[pivot], others[0], others[1], others[2:])

    out = QSeries.zero(order)

    def walk(i, ks, coeff):
        nonlocal out
        if i == m:
            out = out + coeff * term(ks)
            return
        for k, c in enumerate(coords[i]):
            if any(not x.is_zero() for x in c):
                walk(i + 1, ks + [k], coeff * c)

    walk(0, [], QSeries([ONE] + [ZERO] * order))
    return out


# ---------------------------------------------------------------------------
# Fixed complex structure and the GW correspondence
# ---------------------------------------------------------------------------

def fixed_structure(insertions: Sequence, split: int = 2) -> InvariantSeries:
    """<lambda^1, ..., lambda^r>_xi by splitting after insertion ``split``:
    sum_nu <lambda^1..lambda^split, nu>_xi <nu^vee, rest>_xi."""
    vs = [_as_vector(x) for x in insertions]
    r = len(vs)
    if r < 3:
        raise ValueError("need at least 3 insertions")
    n = vs[0].n
    ring = quantum_ring(n)
    if r == 3:
        return InvariantSeries(ring.three_point(*vs), n, tuple(insertions))
    if not 2 <= split <= r - 2:
        raise ValueError(f"split position must lie in [2, {r - 2}]")
    total = ZERO
    for nu in enumerate_partitions(n):
        left = fixed_structure(vs[:split] + [basis_vector(nu)]).value
        if left.is_zero():
            continue
        right = fixed_structure([poincare_dual(nu)] + vs[split:]).value
        total = total + left * right
    return InvariantSeries(total, n, tuple(insertions))


def gw_exponent(insertions: Sequence) -> int:
    """n (2 - r) + sum of lengths."""
    parts = [Partition(x) for x in insertions]
    n = parts[0].size
    return n * (2 - len(parts)) + sum(p.length for p in parts)


def gw_transform(insertions: Sequence, order: int) -> LaurentU:
    """Predicted reduced GW partition function as a Laurent series in v = iu.

    (-1)^n <lambda^1..lambda^r>_xi at q = -e^v, divided by (-v)^e with
    e = n(2 - r) + sum l(lambda^i).
    """
    parts = [Partition(x) for x in insertions]
    n = parts[0].size
    e = gw_exponent(parts)
    value = fixed_structure(parts).value * (-1) ** n
    series = laurent_u_substitute(value, order + e)
    return series.shift(-e) * RatFunc((-1) ** e)


# ---------------------------------------------------------------------------
# Fourier coefficients and the (n), (n-1,1) pairing
# ---------------------------------------------------------------------------

def F_function(mu, order: int) -> QSeries:
    """-|mu| q/(1+q) - sum_i mu_i^2 (-q)^mu_i / (1 - (-q)^mu_i)."""
    mu = Partition(mu)
    f = -mu.size * Q / (1 + Q)
    for p in mu:
        x = (-Q) ** p
        f = f - p * p * x / (1 - x)
    return series_expand(f, order)


def fourier_fprime(lam) -> dict[int, int]:
    """Closed form of (chi^lambda, z d/dz f) as {power of z: coefficient}."""
    lam = Partition(lam)
    if len(lam) == 1:
        return {k: 1 for k in range(1, lam[0] + 1)}
    a, b, tail = lam[0], lam[1], lam[2:]
    if any(p != 1 for p in tail):
        return {}
    c = len(tail)
    out: dict[int, int] = {}
    for power, coeff in ((a + c + 1, (-1) ** (c + 1)), (b + c, (-1) ** c)):
        out[power] = out.get(power, 0) + coeff
    return {k: v for k, v in out.items() if v}


def fourier_fprime_bruteforce(lam) -> dict[int, Fraction]:
    """sum_mu chi^lambda_mu / z(mu) * sum_i mu_i z^mu_i."""
    lam = Partition(lam)
    out: dict[int, Fraction] = {}
    for mu in enumerate_partitions(lam.size):
        chi = Fraction(character(lam, mu), zmu(mu))
        for p in mu:
            out[p] = out.get(p, 0) + chi * p
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class GammaWitness:
    n: int
    series: QSeries
    closed_form: RatFunc


def jj_closed_form(n: int) -> RatFunc:
    """q/(1+q) + n (-q)^n / (1 - (-q)^n)."""
    x = (-Q) ** n
    return Q / (1 + Q) + n * x / (1 - x)


def _fixed_point_jack(lam) -> FockVector:
    lam = Partition(lam)
    n = lam.size
    return jack_vector(lam).vector * ((-1) ** n * factorial(n) * T1 ** (2 * n))


def jj_check(n: int, order: int):
    """Pair J^(n) and J^(n-1,1) through M_D - M_D(0) to first order in s.

    Returns (GammaWitness, ok, failure) where failure is None or
    (s_order, q_order, got, expected).
    """
    if not 2 <= n:
        raise ValueError("need n >= 2")
    MD = build_MD(n)
    a, b = _fixed_point_jack((n,)), _fixed_point_jack((n - 1, 1))
    value = ZERO
    for i, mu in enumerate(MD.basis):
        diag = MD.entries[i][i] - MD.entries[i][i].at_q(0)
        value = value + a[mu] * b[mu] * norm(mu) * diag
    exp = s_expand(value, 1)
    scale = RatFunc((-1) ** n * factorial(n) ** 2, n - 1) * T1 ** (2 * n)
    witness = GammaWitness(n, series_expand(jj_closed_form(n), order), jj_closed_form(n))
    if exp.laurent_offset or not exp.coefficient(0).is_zero():
        return witness, False, (0, None, exp.coefficient(0), ZERO)
    got = series_expand(exp.coefficient(1), order)
    for d in range(order + 1):
        expected = witness.series[d] * scale
        if got[d] != expected:
            return witness, False, (1, d, got[d], expected)
        # case split by whether n divides d
        if d >= 1:
            fact2 = factorial(n) ** 2 * T1 ** (2 * n)
            case = (fact2 * RatFunc((-1) ** (n + d - 1), n - 1) if d % n
                    else fact2 * (-1) ** (n + d))
            if got[d] != case:
                return witness, False, (1, d, got[d], case)
    return witness, True, None


def divisibility_check(n: int, order: int):
    """q^d coefficients (d >= 1) of (t1 t2)^l(mu) <mu|M_D|nu> are polynomials
    divisible by t1 + t2.  Returns (True, None) or (False, witness)."""
    s = T1 + T2
    for mu in enumerate_partitions(n):
        for nu in enumerate_partitions(n):
            val = three_point_D(mu, nu).value * (T1 * T2) ** mu.length
            for d, c in enumerate(series_expand(val, order)):
                if d == 0 or c.is_zero():
                    continue
                if not c.is_polynomial() or not (c / s).is_polynomial():
                    return False, (mu, nu, d, c)
    return True, None


def diagonal_shape_check(n: int, order: int):
    """For d >= 1, the q^d coefficient of <mu, D, mu> is a rational multiple of
    (t1 + t2) (t1 t2)^-l(mu), tested separately for every mu."""
    s = T1 + T2
    for mu in enumerate_partitions(n):
        val = three_point_D(mu, mu).value
        for d, c in enumerate(series_expand(val, order)):
            if d == 0 or c.is_zero():
                continue
            ratio = c * (T1 * T2) ** mu.length / s
            if not ratio.is_constant():
                return False, (mu, d, c)
    return True, None


def addition_formula_check(n: int, order: int):
    """Normalized diagonal q^d coefficients of M_D are additive over parts."""
    for mu in enumerate_partitions(n):
        lhs = series_expand(build_MD(n).entry(mu, mu), order)
        parts = [series_expand(build_MD(p).entry((p,), (p,)), order) for p in mu]
        for d in range(1, order + 1):
            rhs = ZERO
            for ser in parts:
                rhs = rhs + ser[d]
            if lhs[d] != rhs:
                return False, (mu, d, lhs[d], rhs)
    return True, None
