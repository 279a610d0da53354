"""
Bogoliubov transformations and covariance
=========================================

A quadratic generator lambda acts on symbols through D = [lambda, . ]_*.
Exponentiating it gives the symbol-side image of a Bogoliubov rotation.
"""

import numpy as np

from grassmann_star import GrassmannElement, bogoliubov_from_alpha, lambda_from_alpha, transform_symbol
from grassmann_star.covariance import (
    bogoliubov_oracle_residual,
    check_covariance,
    psi_variables,
    quartic_witness,
    quartic_witness_input,
)
from grassmann_star.star import SYMMETRIC

a = 0.6
alpha = a * np.array([[0, 1], [-1, 0]])

pair = bogoliubov_from_alpha(alpha)
print("U =\n", pair.U.real.round(6))
print("V =\n", pair.V.real.round(6))
print("canonical residual:", pair.canonical_residual())
print("oracle residual:   ", bogoliubov_oracle_residual(alpha))

lam = lambda_from_alpha(alpha)
print("lambda =", lam)

# the rotated generators are linear in theta and thetabar
psi, psibar = psi_variables(alpha)
print("psi_1    =", psi[0].prune(1e-15))
print("psibar_1 =", psibar[0].prune(1e-15))

# linear and off-diagonal symbols transform by substitution
off = GrassmannElement.monomial(2, "tb1 t2")
print("covariance residual, tb1 t2:", check_covariance(lam, off))

# the number symbol does not under the coherent product
number = GrassmannElement.monomial(2, "tb1 t1")
print("covariance residual, tb1 t1 (coherent): ", check_covariance(lam, number))
print("covariance residual, tb1 t1 (symmetric):", check_covariance(lam, number, SYMMETRIC))

# transformed symbol vs the naive substitution
print("exp(-D) tb1 t1 =", transform_symbol(lam, number).prune(1e-12))

# a quartic generator breaks covariance for either product
w = quartic_witness(2)
print("quartic witness residual:", check_covariance(w, quartic_witness_input(2)))
