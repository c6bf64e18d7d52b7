"""
Genus 0 invariants from one matrix
==================================

Three point functions, quantum products, WDVV-reconstructed multipoint
series and the predicted Gromov-Witten series of the threefold.
"""

from hilb.fock import basis_vector, divisor_class
from hilb.invariants import (gw_transform, multipoint, quantum_multiply, quantum_ring,
                             three_point)

# The product of the divisor with itself for n = 2.
D = divisor_class(2)
print("D*D =", quantum_multiply(D, D))

# Three point series of (2),(2),(2): an exact rational function of q.
tp = three_point((2,), (2,), (2,))
print(tp.value)
print(tp.series(6))

# Four point series come from WDVV.  With D inserted, the degree d
# coefficient is d times the three point coefficient.
n = 3
four = multipoint([divisor_class(n), (3,), (2, 1), (3,)], 6)
three = quantum_ring(n).three_point(basis_vector((3,)), basis_vector((2, 1)), basis_vector((3,)))
print(four)
print(three)

# q = -e^{iu} turns the fixed-structure bracket into a series in u.
z = gw_transform([(2,), (2,), (2,)], 8)
for k, c in sorted(z.u_coefficients().items()):
    print(f"u^{k}:", c)
