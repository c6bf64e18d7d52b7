import pytest

from hilb.exact import ONE, T1, T2
from hilb.fock import basis_vector, gram_pair
from hilb.jack import EigenvalueCollision, jack_vector, schur_limit, schur_specialization_check
from hilb.operators import build_MD
from hilb.partitions import c_lambda, enumerate_partitions


def test_examples():
    assert jack_vector((1,)).vector == basis_vector((1,))
    j = jack_vector((2,))
    assert j.vector == basis_vector((2,)) * (-ONE / T2) + basis_vector((1, 1))
    assert j.eigenvalue == -T1
    j = jack_vector((1, 1))
    assert j.vector == basis_vector((2,)) * (-ONE / T1) + basis_vector((1, 1))
    assert j.eigenvalue == -T2


def test_schur_examples():
    assert schur_limit((2,)) == basis_vector((2,)) * (ONE / T1) + basis_vector((1, 1))
    assert schur_limit((1, 1)) == basis_vector((2,)) * (-ONE / T1) + basis_vector((1, 1))
    assert schur_specialization_check((3,))[0]


@pytest.mark.parametrize("n", range(1, 6))
def test_eigenvectors(n):
    MD0 = build_MD(n).at_q0()
    for lam in enumerate_partitions(n):
        j = jack_vector(lam)
        assert MD0.apply(j.vector) == j.vector * -c_lambda(lam)
        assert j.vector[(1,) * n] == ONE


@pytest.mark.parametrize("n", range(1, 6))
def test_schur_specialization(n):
    for lam in enumerate_partitions(n):
        assert schur_specialization_check(lam)[0], lam


@pytest.mark.parametrize("n", range(1, 6))
def test_swap_duality(n):
    for lam in enumerate_partitions(n):
        assert jack_vector(lam).vector.map_coeffs(lambda a: a.swap_t()) == \
            jack_vector(lam.conjugate()).vector


@pytest.mark.parametrize("n", range(2, 6))
def test_gram_orthogonal(n):
    parts = enumerate_partitions(n)
    for i, lam in enumerate(parts):
        for rho in parts[:i]:
            assert gram_pair(jack_vector(lam).vector, jack_vector(rho).vector).is_zero()


def test_distinct_through_five():
    for n in range(1, 6):
        cs = [c_lambda(l) for l in enumerate_partitions(n)]
        assert len(set(cs)) == len(cs)


def test_collision_at_six():
    # c(4,1,1) = c(3,3): the eigenspace is two dimensional
    assert c_lambda((4, 1, 1)) == c_lambda((3, 3))
    assert c_lambda((3, 1, 1, 1)) == c_lambda((2, 2, 2))
    with pytest.raises(EigenvalueCollision):
        jack_vector((3, 3))
    assert jack_vector((6,)).eigenvalue == -c_lambda((6,))
