"""
The quantum differential equation
=================================

q dPsi/dq = M_D Psi near q = 0, its singular points and numerical monodromy.
"""

from fractions import Fraction

import numpy as np

from hilb.qde import (circle, commutator_probe, formal_solution, lasso, monodromy_probe,
                      ode_residual, residue_eigenvalues, singularities)

# Formal solution Psi = Y(q) q^{M_D(0)} for n = 2.
sol = formal_solution(2, 4)
for d in range(3):
    print(f"Y_{d} =", [[str(a) for a in row] for row in sol.Y_at(d)])
res = ode_residual(sol, "nakajima")
print("residual vanishes:", all(x.is_zero() for m in res for row in m for x in row))

# Singular points besides 0 and infinity are roots of unity.
for n in (2, 3, 4):
    print(n, [p.label for p in singularities(n)])

# Monodromy around q = 0 has eigenvalues exp(-2 pi i c(lambda)).
t1, t2 = Fraction(3, 10), Fraction(7, 20)
rep = monodromy_probe(3, t1, t2, circle(0, 0.3), 1e-10)
print(np.round(np.sort_complex(rep.eigenvalues()), 8))
print(np.round(np.sort_complex(residue_eigenvalues(3, t1, t2)), 8))

# When t1 + t2 is an integer the loops around roots of unity are trivial
# and loops sharing a basepoint commute.
t1, t2 = Fraction(1, 3), Fraction(2, 3)
rep = monodromy_probe(3, t1, t2, circle(1, 0.2), 1e-10)
print("deviation from identity:", np.max(np.abs(rep.matrix - np.eye(3))))
loops = [lasso(p.value, 0.2, -1.5j) for p in singularities(3) if p.value is not None]
print("largest commutator:", commutator_probe(3, t1, t2, loops, 1e-10))
