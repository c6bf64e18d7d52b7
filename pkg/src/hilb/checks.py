"""Named identity checks grouped into the suites run by ``hilb verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

import numpy as np

from .exact import RatFunc, T1, T2, parse, series_expand
from .fock import basis_vector, divisor_class, gram_pair
from .partitions import Partition, enumerate_partitions

__all__ = ["Check", "suite_checks"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    fn: Callable

    def run(self):
        """(ok, witness string or None); exceptions count as failures."""
        try:
            res = self.fn()
        except Exception as exc:  # report, do not crash the suite
            return False, f"{type(exc).__name__}: {exc}"
        ok, wit = res if isinstance(res, tuple) else (res, None)
        ok = bool(ok)
        return ok, None if ok else (None if wit is None else str(wit))


def _ok(flag_and_witness):
    ok, wit = flag_and_witness
    return ok, None if ok else wit


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def md_golden():
    from .operators import build_MD
    MD = build_MD(2)
    s, p = T1 + T2, T1 * T2
    q = parse("q")
    want = {((2,), (2,)): -s * (1 + q) / (1 - q), ((2,), (1, 1)): RatFunc(-1),
            ((1, 1), (2,)): p, ((1, 1), (1, 1)): RatFunc(0)}
    for (row, col), val in want.items():
        # entry(row, col) is the coefficient of |row> in M_D|col>
        if MD.entry(row, col) != val:
            return False, (row, col, MD.entry(row, col), val)
    return True, None


def md_on_unit(n):
    """M_D |1^n> = -|2, 1^(n-2)>."""
    from .operators import build_MD
    got = build_MD(n).apply(basis_vector((1,) * n))
    want = basis_vector((2,) + (1,) * (n - 2)) * RatFunc(-1)
    return got == want, got


def limiting_distinct(n):
    from .operators import limiting_operator
    L = limiting_operator(n)
    diag = [L.entries[i][i] for i in range(L.dim)]
    for i in range(len(diag)):
        for j in range(i):
            if diag[i] == diag[j]:
                return False, (L.basis[i], L.basis[j])
    return True, None


def _operator_checks(max_n, order):
    from . import operators as op
    out = [("golden_n2", md_golden)]
    for n in range(1, max_n + 1):
        out += [
            (f"eigenvalues_n{n}", lambda n=n: op.eigenvalue_check(n)),
            (f"selfadjoint_n{n}", lambda n=n: op.selfadjoint_check(n)),
            (f"integrality_n{n}", lambda n=n: op.integrality_check(n, max(order, 12))),
            (f"calogero_sutherland_n{n}", lambda n=n: _ok(op.cs_check(n))),
            (f"duality_n{n}", lambda n=n: _ok(op.duality_check(n))),
            (f"length_band_n{n}", lambda n=n: op.nonvanishing_check(n)),
            (f"offdiagonal_q_free_n{n}", lambda n=n: op.offdiagonal_q_free_check(n)),
            (f"limit_distinct_n{n}", lambda n=n: limiting_distinct(n)),
        ]
        if n >= 2:
            out.append((f"unit_image_n{n}", lambda n=n: md_on_unit(n)))
    return out


# ---------------------------------------------------------------------------
# jack
# ---------------------------------------------------------------------------

def jack_swap(lam):
    """Swapping t1 and t2 sends the Jack vector of lambda to that of lambda'."""
    from .jack import jack_vector
    a = jack_vector(lam).vector.map_coeffs(RatFunc.swap_t)
    b = jack_vector(Partition(lam).conjugate()).vector
    return a == b, (lam,)


def jack_orthogonal(n):
    from .jack import jack_vector
    lams = enumerate_partitions(n)
    vecs = [jack_vector(l).vector for l in lams]
    for i in range(len(vecs)):
        for j in range(i):
            if not gram_pair(vecs[i], vecs[j]).is_zero():
                return False, (lams[i], lams[j])
    return True, None


def _jack_checks(max_n, order):
    from .jack import schur_specialization_check
    out = []
    for n in range(1, min(max_n, 5) + 1):
        out.append((f"orthogonal_n{n}", lambda n=n: jack_orthogonal(n)))
        for lam in enumerate_partitions(n):
            out.append((f"schur_{lam}", lambda lam=lam: schur_specialization_check(lam)))
            out.append((f"swap_{lam}", lambda lam=lam: jack_swap(lam)))
    return out


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def divisor_equation(n, order):
    """<D, a, b, c>_d = d <a, b, c>_d."""
    from .invariants import multipoint, quantum_ring
    ring = quantum_ring(n)
    parts = enumerate_partitions(n)
    for a in parts:
        for b in parts:
            if b < a:
                continue
            for c in parts:
                if c < b:
                    continue
                four = multipoint([divisor_class(n), a, b, c], order)
                three = series_expand(ring.three_point(*(basis_vector(x) for x in (a, b, c))),
                                      order)
                for d in range(order + 1):
                    if four[d] != three[d] * d:
                        return False, (a, b, c, d)
    return True, None


def path_independence(n, order):
    from .invariants import multipoint
    parts = enumerate_partitions(n)
    # four and five point brackets with every pivot
    cases = [[parts[i % len(parts)] for i in range(k, k + 4)] for k in range(len(parts))]
    if n >= 2:
        cases.append([parts[0]] * 5)
    for ins in cases:
        ref = multipoint(ins, order)
        for piv in range(len(ins)):
            if multipoint(ins, order, pivot=piv) != ref:
                return False, (ins, piv)
    return True, None


def associativity(n, t1=None, t2=None):
    from .invariants import quantum_ring
    ring = quantum_ring(n, t1, t2)
    parts = enumerate_partitions(n)
    for a in parts:
        for b in parts:
            for c in parts:
                left = ring.multiply(ring.multiply(a, b), c)
                right = ring.multiply(a, ring.multiply(b, c))
                if left != right:
                    return False, (a, b, c)
    return True, None


def commutativity(n):
    from .invariants import quantum_ring
    ring = quantum_ring(n)
    parts = enumerate_partitions(n)
    for i, a in enumerate(parts):
        for b in parts[i + 1:]:
            if ring.multiply(a, b) != ring.multiply(b, a):
                return False, (a, b)
    return True, None


def split_associativity():
    """Fixed-structure five point bracket does not depend on the split."""
    from .invariants import fixed_structure
    ins = [(2,), (1, 1), (2,), (2,), (1, 1)]
    a = fixed_structure(ins, split=2).value
    b = fixed_structure(ins, split=3).value
    return a == b, (ins,)


def gw_tanh(order=10):
    """n=2, three (2)'s: -(s / 2 t1 t2) tanh(v/2)/v, coefficients i-free."""
    from .invariants import gw_transform
    z = gw_transform([(2,), (2,), (2,)], order)
    s, p = T1 + T2, T1 * T2
    # tanh(v/2)/v by dividing the sinh series by the cosh series
    sinh = [Fraction(1, factorial(k) * 2 ** k) if k % 2 else Fraction(0) for k in range(order + 2)]
    cosh = [Fraction(1, factorial(k) * 2 ** k) if k % 2 == 0 else Fraction(0)
            for k in range(order + 2)]
    th = []
    for k in range(order + 2):
        th.append(sinh[k] - sum(cosh[i] * th[k - i] for i in range(1, k + 1)))
    for j in range(order + 1):
        want = -s / (2 * p) * RatFunc(th[j + 1])
        if z[j] != want:
            return False, (j, z[j], want)
    return not z.odd_part(), "odd powers of v"


def _invariant_checks(max_n, order):
    from .invariants import (addition_formula_check, diagonal_shape_check,
                             divisibility_check)
    out = []
    for n in range(1, max_n + 1):
        out += [
            (f"divisibility_n{n}", lambda n=n: divisibility_check(n, order)),
            (f"diagonal_shape_n{n}", lambda n=n: diagonal_shape_check(n, order)),
            (f"addition_formula_n{n}", lambda n=n: addition_formula_check(n, order)),
        ]
    for n in range(1, min(max_n, 3) + 1):
        out += [
            (f"commutativity_n{n}", lambda n=n: commutativity(n)),
            (f"associativity_n{n}", lambda n=n: associativity(n)),
            (f"divisor_equation_n{n}", lambda n=n: divisor_equation(n, order)),
            (f"path_independence_n{n}", lambda n=n: path_independence(n, order)),
        ]
    if max_n >= 4:
        for t1, t2 in ((Fraction(1, 3), Fraction(2, 7)), (Fraction(-3, 5), Fraction(5, 2))):
            out.append((f"associativity_n4_t{t1}_{t2}",
                        lambda t1=t1, t2=t2: associativity(4, t1, t2)))
    if max_n >= 2:
        out += [("split_associativity_n2", split_associativity), ("gw_tanh_n2", gw_tanh)]
    return out


# ---------------------------------------------------------------------------
# fourier, jj
# ---------------------------------------------------------------------------

def fourier(n):
    from .invariants import fourier_fprime, fourier_fprime_bruteforce
    for lam in enumerate_partitions(n):
        if fourier_fprime(lam) != fourier_fprime_bruteforce(lam):
            return False, (lam, fourier_fprime(lam), fourier_fprime_bruteforce(lam))
    return True, None


def _fourier_checks(max_n, order):
    return [(f"closed_form_n{n}", lambda n=n: fourier(n)) for n in range(1, max(max_n, 7) + 1)]


def _jj_checks(max_n, order):
    from .invariants import jj_check

    def one(n):
        _, ok, failure = jj_check(n, max(order, 12))
        return ok, failure
    return [(f"jj_n{n}", lambda n=n: one(n)) for n in range(2, min(max_n, 5) + 1)]


# ---------------------------------------------------------------------------
# qde, monodromy
# ---------------------------------------------------------------------------

def qde_residual(n, order, frame):
    from .qde import formal_solution, ode_residual, similarity_check
    sol = formal_solution(n, order)
    if frame == "eigen" and not similarity_check(sol):
        return False, "Jack basis does not diagonalize M_D(0)"
    for d, mat in enumerate(ode_residual(sol, frame)):
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if not x.is_zero():
                    return False, (frame, d, sol.basis[i], sol.basis[j])
    return True, None


def _qde_checks(max_n, order):
    out = []
    for n in range(1, min(max_n, 4) + 1):
        out.append((f"residual_eigen_n{n}", lambda n=n: qde_residual(n, order, "eigen")))
        if n <= 3:
            out.append((f"residual_nakajima_n{n}",
                        lambda n=n: qde_residual(n, order, "nakajima")))
    return out


GENERIC = (Fraction(3, 10), Fraction(7, 20))
INTEGER_S = (Fraction(1, 3), Fraction(2, 3))


def monodromy_at_zero(n, t1, t2):
    from .qde import circle, monodromy_probe, residue_eigenvalues
    rep = monodromy_probe(n, t1, t2, circle(0, 0.3), 1e-10)
    got = np.sort_complex(rep.eigenvalues())
    want = np.sort_complex(residue_eigenvalues(n, t1, t2))
    # match greedily, sorting can misalign near-equal values
    left = list(want)
    worst = 0.0
    for z in got:
        k = int(np.argmin([abs(z - w) for w in left]))
        worst = max(worst, abs(z - left.pop(k)))
    return worst < 1e-6, (worst, rep.converged)


def monodromy_root_of_unity(n, t1, t2):
    from .qde import circle, monodromy_probe, singularities
    worst, where = 0.0, None
    for pt in singularities(n):
        if pt.value is None or pt.value == 0:
            continue
        rep = monodromy_probe(n, t1, t2, circle(pt.value, 0.2), 1e-10)
        dev = float(np.max(np.abs(rep.matrix - np.eye(len(rep.matrix)))))
        if dev > worst:
            worst, where = dev, pt.label
    return worst < 1e-5, (where, worst)


def _monodromy_checks(max_n, order):
    out = []
    for n in range(2, min(max_n, 3) + 1):
        out.append((f"residue_eigenvalues_n{n}", lambda n=n: monodromy_at_zero(n, *GENERIC)))
        out.append((f"roots_of_unity_n{n}",
                    lambda n=n: monodromy_root_of_unity(n, *INTEGER_S)))
    return out


_SUITES = {
    "operators": _operator_checks,
    "jack": _jack_checks,
    "invariants": _invariant_checks,
    "fourier": _fourier_checks,
    "jj": _jj_checks,
    "qde": _qde_checks,
    "monodromy": _monodromy_checks,
}


def suite_checks(name, max_n, order):
    return [Check(name, label, fn) for label, fn in _SUITES[name](max_n, order)]
