"""
Fermionic oscillator in the star language
=========================================

Projectors |m><n| become symbols P[m,n]. Ladder relations and the su(2)
structure can then be checked by star multiplication alone.
"""

from grassmann_star import GrassmannElement, hamiltonian_symbol, projector_symbol, star
from grassmann_star.oscillator import casimir, generating_function, generating_function_oracle, ladder_relations_check
from grassmann_star.star import SYMMETRIC, star_commutator

t = GrassmannElement.gen(1, "t1")
tb = GrassmannElement.gen(1, "tb1")

for m in (0, 1):
    for n in (0, 1):
        print(f"P[{m},{n}] =", projector_symbol(m, n))

h = hamiltonian_symbol()
P00, P11 = projector_symbol(0, 0), projector_symbol(1, 1)
print("h =", h)
print("t * P00  =", star(t, P00))
print("h * P11  =", star(h, P11))
print("P00 + P11 =", P00 + P11)

for c in ladder_relations_check().checks:
    print(f"  {c.id:20} {c.residual}")

# generating function: Fock-space version vs the closed form
print("Phi (Fock)   =", generating_function_oracle())
print("Phi (closed) =", generating_function())

# su(2): the bracket [j-, j+] = 2 j3 picks j3 = -tb t
j3 = -h
print("[t, tb]  =", star_commutator(t, tb, SYMMETRIC))
print("[tb, j3] =", star_commutator(tb, j3, SYMMETRIC))
print("Casimir  =", casimir(t, tb, j3))
