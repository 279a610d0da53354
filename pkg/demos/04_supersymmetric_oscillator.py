"""
Supersymmetric oscillator
=========================

A boson z and a fermion theta share one superstar product. The supercharges
q- = z thetabar and q+ = zb theta close into sl(1/1) with h = zb z + thetabar theta.
"""

import numpy as np

from grassmann_star import supercharge_symbols, super_star
from grassmann_star.boson import BosonPolynomial, FockSymbol, fock_star, poly_to_fock, voros_star
from grassmann_star.susy import degeneracy_check, oracle_super_star, super_anticommutator, super_commutator

z, zb = BosonPolynomial.z(), BosonPolynomial.zb()
print("z * zb   =", voros_star(z, zb))
print("zb * z   =", voros_star(zb, z))

# basis symbols Phi[n,m] of |n><m| in a truncated Fock space
cutoff = 6
phi = FockSymbol.basis(cutoff, 3, 1)
lowered = fock_star(poly_to_fock(z, cutoff), phi)
print("z * Phi[3,1] coefficients (row 2):", lowered.c[2].real.round(6), "sqrt(3) =", np.sqrt(3))

h, qm, qp = supercharge_symbols()
print("h  =", h)
print("q- =", qm)
print("q+ =", qp)
print("{q-, q+} =", super_anticommutator(qm, qp))
print("q+ * q+  =", super_star(qp, qp))
print("[h, q+]  =", super_commutator(h, qp))

# the same product through the tensor-product operators
truncated = oracle_super_star(qm, qp, cutoff)
print("oracle q- * q+ valid rows:", truncated.valid())

for c in degeneracy_check(cutoff).checks:
    print(f"  {c.id:20} {c.residual}  {c.note}")
