import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from hilb.exact import ONE, T1, T2, ZERO
from hilb.linalg import matmul
from hilb.qde import (ResonanceError, circle, commutator_probe, formal_solution, invariance_probe,
                      lasso, monodromy_probe, ode_residual, parse_loop, residue_eigenvalues,
                      similarity_check, singularities, transport)
from hilb.qde import _q_coefficients, _specialized_MD

S = T1 + T2
GENERIC = (Fraction(3, 10), Fraction(7, 20))
INTEGER_S = (Fraction(1, 3), Fraction(2, 3))


def _all_zero(res):
    return all(x.is_zero() for mat in res for row in mat for x in row)


def test_n1_identity():
    sol = formal_solution(1, 6)
    assert all(sol.Y_at(d) == ((ONE if d == 0 else ZERO,),) for d in range(7))


def test_n2_coefficients_and_sylvester():
    Ms = _q_coefficients(_specialized_MD(2, None, None), 5)
    for e in range(1, 6):
        assert Ms[e] == [[-2 * S, ZERO], [ZERO, ZERO]]
    sol = formal_solution(2, 3)
    Y1, M0 = [list(r) for r in sol.Y_at(1)], Ms[0]
    lhs = [[Y1[i][j] + a - b for j, (a, b) in enumerate(zip(r1, r2))]
           for i, (r1, r2) in enumerate(zip(matmul(Y1, M0), matmul(M0, Y1)))]
    assert lhs == Ms[1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_residual_eigen_frame(n):
    sol = formal_solution(n, 8)
    assert similarity_check(sol)
    assert _all_zero(ode_residual(sol, "eigen"))


@pytest.mark.parametrize("n", [2, 3])
def test_residual_nakajima_frame(n):
    assert _all_zero(ode_residual(formal_solution(n, 8), "nakajima"))


def test_specialized_parameters():
    t1, t2 = Fraction(1, 3), Fraction(2, 7)
    sol = formal_solution(3, 6, t1, t2)
    assert _all_zero(ode_residual(sol, "nakajima", t1, t2))
    generic = formal_solution(3, 6)
    assert sol.Y_at(4)[1][2] == generic.Y_at(4)[1][2].specialize(t1=t1, t2=t2)


def test_resonance_detected():
    with pytest.raises(ResonanceError):
        formal_solution(2, 3, 1, 2)


def _labels(n):
    return [p.label for p in singularities(n)]


def test_singularities():
    assert _labels(1) == ["0", "inf"]
    assert _labels(2) == ["0", "inf", "1"]
    pts = singularities(3)
    assert [p.label for p in pts][:3] == ["0", "inf", "1"]
    cube = sorted((p.value for p in pts if p.k == 3), key=lambda z: z.imag)
    want = sorted((-cmath.exp(2j * math.pi * j / 3) for j in (1, 2)), key=lambda z: z.imag)
    assert np.allclose(cube, want)
    assert "-1" not in _labels(3)
    assert sum(1 for p in singularities(4) if p.k == 4) == 2


def test_singularities_match_numeric_poles():
    # every listed root of unity makes M_D blow up; other roots of unity do not
    from hilb.qde import numeric_operator
    for n in (2, 3, 4):
        F = numeric_operator(n, *GENERIC)
        listed = [p.value for p in singularities(n) if p.k]
        for k in range(1, n + 1):
            for j in range(k):
                z = -cmath.exp(2j * math.pi * j / k)
                near = np.max(np.abs(F(z * (1 + 1e-7))))
                if any(abs(z - w) < 1e-9 for w in listed):
                    assert near > 1e5
                else:
                    assert near < 1e3


def test_n1_monodromy_trivial():
    rep = monodromy_probe(1, *GENERIC, circle(0, 0.5))
    assert np.allclose(rep.matrix, np.eye(1), atol=1e-9)


@pytest.mark.parametrize("n", [2, 3])
def test_monodromy_at_zero(n):
    rep = monodromy_probe(n, *GENERIC, circle(0, 0.3), 1e-10)
    assert rep.converged
    got, want = rep.eigenvalues(), residue_eigenvalues(n, *GENERIC)
    for w in want:
        assert np.min(np.abs(got - w)) < 1e-6


def test_root_of_unity_integer_s():
    rep = monodromy_probe(2, *INTEGER_S, parse_loop("center=1,radius=0.3"), 1e-10)
    assert np.max(np.abs(rep.matrix - np.eye(2))) < 1e-5
    generic = monodromy_probe(2, *GENERIC, parse_loop("center=1,radius=0.3"), 1e-10)
    assert np.max(np.abs(generic.matrix - np.eye(2))) > 1e-2


def test_loop_composition():
    b = -1.5j
    small = [lasso(0, 0.3, b), lasso(1, 0.3, b)]
    mats = [transport(2, *GENERIC, lp, 1e-11) for lp in small]
    # ccw big loop: the lasso around 1 has the smaller arg(p - b) and acts first
    big = transport(2, *GENERIC, lasso(0.5, 1.2, b), 1e-11)
    assert np.max(np.abs(big - mats[1] @ mats[0])) > 1e-3
    assert np.allclose(big, mats[0] @ mats[1], atol=1e-6)


def test_invariance_under_shift():
    diff, a, b = invariance_probe(2, *GENERIC, circle(1, 0.3), 1e-10)
    assert diff < 1e-6
    diff, a, b = invariance_probe(3, *GENERIC, circle(0, 0.3), 1e-10)
    assert diff < 1e-6


def test_abelian_for_integer_s():
    b = -1.5j
    loops = [lasso(p.value, 0.2, b) for p in singularities(3) if p.value is not None]
    assert commutator_probe(3, *INTEGER_S, loops, 1e-10) < 1e-6
    assert commutator_probe(3, *GENERIC, loops, 1e-10) > 1e-2


@pytest.mark.parametrize("text", ["radius=1", "center=0,radius=-1", "center=0,radius=1,foo=2",
                                  "center=0,radius=1,orientation=up"])
def test_parse_loop_errors(text):
    with pytest.raises(ValueError):
        parse_loop(text)


def test_parse_loop_lasso():
    lp = parse_loop("center=-1,radius=0.2,basepoint=-1.5i,orientation=cw")
    assert lp.description["type"] == "lasso"
    assert abs(lp.basepoint - (-1.5j)) < 1e-12
