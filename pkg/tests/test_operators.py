import csv
import io
from fractions import Fraction

import pytest

from hilb.exact import ONE, Q, RatFunc, T1, T2, ZERO, series_expand
from hilb.fock import basis_vector
from hilb.operators import (build_M, build_MD, cs_check, duality_check, eigenvalue_check,
                            integrality_check, limiting_operator, nonvanishing_check,
                            offdiagonal_q_free_check, ratio, selfadjoint_check)
from hilb.partitions import enumerate_partitions

S = T1 + T2


def test_build_M_n2():
    M = build_M(2)
    assert M.apply(basis_vector((2,))) == \
        basis_vector((2,)) * (2 * S * (Q ** 2 + 1) / (Q ** 2 - 1)) + basis_vector((1, 1)) * (T1 * T2)
    assert M.apply(basis_vector((1, 1))) == \
        basis_vector((1, 1)) * (-S * (1 - Q) / (1 + Q)) - basis_vector((2,))


def test_build_M_vacuum():
    M = build_M(0)
    assert M.dim == 1 and M.is_zero()


def test_build_MD_n2():
    MD = build_MD(2)
    assert MD.entry((2,), (2,)) == -S * (1 + Q) / (1 - Q)
    assert MD.entry((1, 1), (1, 1)) == ZERO
    assert MD.apply(basis_vector((1, 1))) == basis_vector((2,)) * -1


@pytest.mark.parametrize("n", range(1, 7))
def test_MD_relation_and_diagonal(n):
    # M_D = M - (s/2) r_1 n, and the diagonal has a closed form per partition
    M, MD = build_M(n), build_MD(n)
    half = RatFunc(Fraction(1, 2))
    for i, mu in enumerate(MD.basis):
        for j in range(MD.dim):
            shift = S * half * ratio(1) * n if i == j else ZERO
            assert MD.entries[i][j] == M.entries[i][j] - shift
        diag = ZERO
        for p in mu:
            diag = diag + S * half * p * p * ratio(p)
        assert MD.entries[i][i] == diag - S * half * n * ratio(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_MD_on_unit(n):
    got = build_MD(n).apply(basis_vector((1,) * n))
    assert got == basis_vector((2,) + (1,) * (n - 2)) * -1


@pytest.mark.parametrize("n", range(1, 7))
def test_structural_identities(n):
    assert selfadjoint_check(n)[0]
    assert nonvanishing_check(n)[0]
    assert offdiagonal_q_free_check(n)[0]
    assert cs_check(n)[0]
    assert duality_check(n)[0]


@pytest.mark.parametrize("n", range(1, 6))
def test_classical_eigenvalues(n):
    assert eigenvalue_check(n)


def test_integrality_examples():
    assert integrality_check(2, 12)[0]
    assert integrality_check(1, 5)[0]
    assert integrality_check(4, 10)[0]
    ser = series_expand(build_MD(2).entry((2,), (2,)), 4)
    assert list(ser) == [-S, -2 * S, -2 * S, -2 * S, -2 * S]


def _limit_oracle(f):
    # t1 = t, t2 = 1/t; with u = 1/t the limit of f/t is (u f)(1/u, u) at u = 0
    g = f.compose(ONE / T1, T1, Q) * T1
    return g.specialize(t1=0)


@pytest.mark.parametrize("n", range(1, 6))
def test_limiting_operator_oracle(n):
    L, MD = limiting_operator(n), build_MD(n)
    for i in range(MD.dim):
        for j in range(MD.dim):
            assert L.entries[i][j] == _limit_oracle(MD.entries[i][j])


def test_limiting_examples():
    L = limiting_operator(2)
    assert L.entry((1, 1), (1, 1)) == ZERO
    assert L.entry((2,), (2,)) == (Q + 1) / (Q - 1)
    assert all(a.free_symbols() <= {"q"} for row in limiting_operator(4).entries for a in row)


@pytest.mark.parametrize("n", range(1, 7))
def test_limiting_distinct(n):
    L = limiting_operator(n)
    diag = [L.entries[i][i] for i in range(L.dim)]
    assert len(set(diag)) == len(diag)


def test_output_formats():
    MD = build_MD(2)
    rows = list(csv.reader(io.StringIO(MD.to_csv())))
    assert rows[0] == ["", "[2]", "[1,1]"]
    assert rows[2] == ["[1,1]", "t1*t2", "0"]
    assert '"basis": [\n  "[2]",\n  "[1,1]"\n ]' in MD.to_json()
