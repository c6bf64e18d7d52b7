"""Fixed-point classes: eigenvectors of classical multiplication by D."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import ONE, RatFunc, T1, s_expand
from .fock import FockVector
from .linalg import kernel
from .operators import build_MD
from .partitions import Partition, c_lambda, character, dimension, enumerate_partitions

__all__ = ["JackVector", "EigenvalueCollision", "jack_vector", "schur_limit",
           "schur_specialization_check"]


class EigenvalueCollision(ArithmeticError):
    pass


@dataclass(frozen=True)
class JackVector:
    lam: Partition
    vector: FockVector
    eigenvalue: RatFunc


@lru_cache(maxsize=None)
def jack_vector(lam) -> JackVector:
    """Eigenvector of M_D(0) with eigenvalue -c(lambda), normalized so the
    coefficient of |1^n> is 1."""
    lam = Partition(lam)
    n = lam.size
    if n < 1:
        raise ValueError("need |lambda| >= 1")
    A = build_MD(n).at_q0()
    c = c_lambda(lam)
    shifted = [[a + c if i == j else a for j, a in enumerate(row)]
               for i, row in enumerate(A.entries)]
    ker = kernel(shifted)
    if len(ker) != 1:
        raise EigenvalueCollision(f"-c({lam}) has a {len(ker)}-dimensional eigenspace")
    vec = ker[0]
    unit = A.basis.index(Partition((1,) * n))
    vec = [x / vec[unit] for x in vec]
    return JackVector(lam, FockVector.from_list(n, vec, A.basis), -c)


def schur_limit(lam) -> FockVector:
    """sum_mu chi^lambda_mu / dim(lambda) * t1^(l(mu) - n) |mu>."""
    lam = Partition(lam)
    n = lam.size
    dim = dimension(lam)
    return FockVector(n, {mu: RatFunc(character(lam, mu), dim) * T1 ** (mu.length - n)
                          for mu in enumerate_partitions(n)})


def schur_specialization_check(lam):
    """Compare the t2 -> -t1 limit of jack_vector(lam) with the character formula.

    Returns (True, None) or (False, (mu, limit, expected)).
    """
    jv = jack_vector(lam).vector
    expected = schur_limit(lam)
    for mu in enumerate_partitions(jv.n):
        exp = s_expand(jv[mu], 0)
        if exp.laurent_offset:
            return False, (mu, exp, expected[mu])
        if exp.coefficient(0) != expected[mu]:
            return False, (mu, exp.coefficient(0), expected[mu])
    return True, None
