"""
The operator M_D and its classical limit
========================================

Quantum multiplication by the divisor on Hilb_n(C^2), written in the Fock
basis, with a look at its q = 0 eigenvectors.
"""

from hilb.exact import series_expand
from hilb.jack import jack_vector
from hilb.operators import build_MD, classical_charpoly, limiting_operator
from hilb.partitions import c_lambda, enumerate_partitions

# For n = 2 the matrix is small enough to read.  Column mu is the image of |mu>.
MD = build_MD(2)
for mu, row in zip(MD.basis, MD.entries):
    print(mu, [str(a) for a in row])

# The only q-dependence sits on the diagonal, as a rational function with
# poles at roots of unity.  Its Taylor coefficients are integral.
print(series_expand(MD.entry((2,), (2,)), 6))

# At q = 0 the eigenvalues are -c(lambda), one for each partition.
n = 3
print("charpoly coefficients:", [str(c) for c in classical_charpoly(n)])
for lam in enumerate_partitions(n):
    print(lam, "c =", c_lambda(lam))

# Eigenvectors, normalized to have coefficient 1 on |1^n>.
for lam in enumerate_partitions(n):
    print(lam, jack_vector(lam).vector)

# Sending t1 -> oo with t1 t2 = 1 leaves a diagonal operator in q alone.
L = limiting_operator(3)
for i, mu in enumerate(L.basis):
    print(mu, L.entries[i][i])
