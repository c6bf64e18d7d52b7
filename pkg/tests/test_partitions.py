from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from hilb.exact import T1, T2, ZERO
from hilb.partitions import (Partition, c_lambda, character, character_table, dimension,
                             enumerate_partitions, zmu)

P = Partition


def test_enumerate_examples():
    assert enumerate_partitions(0) == (P(()),)
    assert [list(p) for p in enumerate_partitions(4)] == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]
    assert len(enumerate_partitions(6)) == 11


def test_partition_counts():
    # Euler's pentagonal recurrence as an independent count
    p = [1]
    for n in range(1, 12):
        total, k = 0, 1
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p.append(total)
        assert len(enumerate_partitions(n)) == total


def test_zmu_examples():
    assert zmu((2, 1)) == 2
    assert zmu((1, 1, 1)) == 6
    assert zmu((2, 2, 1)) == 8


def test_zmu_counts_centralizers():
    # n!/z(mu) is the conjugacy class size
    for n in range(1, 7):
        assert sum(Fraction(factorial(n), zmu(mu)) for mu in enumerate_partitions(n)) == factorial(n)


def test_c_lambda_examples():
    assert c_lambda((1,)) == ZERO
    assert c_lambda((2,)) == T1
    assert c_lambda((1, 1)) == T2
    assert c_lambda((2, 1)) == T1 + T2


def _cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        out.append(length)
    return P(sorted(out, reverse=True))


def test_character_examples():
    for n in range(1, 6):
        for mu in enumerate_partitions(n):
            assert character((n,), mu) == 1
        if n >= 2:
            assert dimension((n - 1, 1)) == n - 1
    assert character((2, 1), (3,)) == -1


def test_standard_rep_bruteforce():
    # chi^(n-1,1) = fixed points - 1, counted over S_n
    for n in range(2, 6):
        for perm in permutations(range(n)):
            fixed = sum(1 for i, x in enumerate(perm) if i == x)
            assert character((n - 1, 1), _cycle_type(perm)) == fixed - 1


@pytest.mark.parametrize("n", range(1, 8))
def test_orthogonality(n):
    parts = enumerate_partitions(n)
    table = character_table(n)
    for lam in parts:
        for rho in parts:
            row = sum(Fraction(table[lam, mu] * table[rho, mu], zmu(mu)) for mu in parts)
            assert row == (1 if lam == rho else 0)
    for mu in parts:
        for nu in parts:
            col = sum(table[lam, mu] * table[lam, nu] for lam in parts)
            assert col == (zmu(mu) if mu == nu else 0)
    assert sum(dimension(lam) ** 2 for lam in parts) == factorial(n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_c_lambda_symmetries(lam):
    assert c_lambda(lam).swap_t() == c_lambda(lam.conjugate())
    assert c_lambda(lam).specialize(t1=1, t2=0).to_fraction() == sum(comb(p, 2) for p in lam)


def test_parse_and_str():
    assert P.parse("[3,1,1]") == P((3, 1, 1))
    assert str(P((2, 1))) == "[2,1]"
    with pytest.raises(ValueError):
        P.parse("[1,x]")
