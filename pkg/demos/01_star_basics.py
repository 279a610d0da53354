"""
Star products on Grassmann symbols
==================================

Symbols of fermionic operators are Grassmann polynomials. The star product
turns the operator product into an operation on symbols.
"""

import numpy as np

from grassmann_star import GrassmannElement, multiply, oracle_star, star, t_map
from grassmann_star.star import SYMMETRIC, Product, StarKind

# one fermionic mode: theta and its partner thetabar
t = GrassmannElement.gen(1, "t1")
tb = GrassmannElement.gen(1, "tb1")

print("pointwise  t tb   =", multiply(t, tb))
print("star       t * tb =", star(t, tb))
print("star       tb * t =", star(tb, t))

# the anticommutator reproduces {f, f+} = 1
print("{tb, t}_*         =", star(t, tb) + star(tb, t))

# the same product computed through 2x2 matrices
print("via operators     =", oracle_star(t, tb))

# symmetric ordering splits the contraction evenly
print("symmetric t * tb  =", star(t, tb, SYMMETRIC))
print("symmetric tb * t  =", star(tb, t, SYMMETRIC))

# T carries symmetric symbols to coherent ones
number = multiply(tb, t)
print("T(tb t)           =", t_map(number))
print("T(a) * T(b) == T(a *sym b):",
      star(t_map(t), t_map(tb)) == t_map(star(t, tb, SYMMETRIC)))

# at hbar = 0 the product is pointwise again
classical = StarKind(Product.COHERENT, 0.0)
print("hbar = 0: t * tb  =", star(t, tb, classical))

# random symbols at N = 3 against the Fock-space oracle
rng = np.random.default_rng(1)
a = GrassmannElement.from_vector(3, rng.normal(size=64))
b = GrassmannElement.from_vector(3, rng.normal(size=64))
print("N = 3 oracle residual:", (star(a, b) - oracle_star(a, b)).norm())
