import pytest

from grassmann_star import GrassmannElement as G
from grassmann_star.coherent import diagonal_symbol
from grassmann_star.fock import basis_operator, ladder
from grassmann_star.grassmann import exp_nilpotent, multiply
from grassmann_star.oscillator import (
    casimir,
    extract,
    generating_derivative_check,
    generating_function_oracle,
    hamiltonian_symbol,
    ladder_relations_check,
    matrix_elements,
    projector_symbol,
    restrict,
    su2_star_check,
)
from grassmann_star.star import SYMMETRIC, star, star_commutator

t, tb = G.gen(1, "t1"), G.gen(1, "tb1")
q = G.monomial(1, "tb1 t1")


def test_projectors():
    assert projector_symbol(0, 0) == 1 - q
    assert projector_symbol(1, 1) == q
    assert projector_symbol(0, 1) == t
    assert projector_symbol(1, 0) == tb


@pytest.mark.parametrize("m,n", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_projector_is_symbol_of_outer_product(m, n):
    # |m><n| with the single-mode occupation basis
    import numpy as np
    P = np.zeros((2, 2))
    P[m, n] = 1
    assert diagonal_symbol(P, 1) == projector_symbol(m, n)


def test_projector_range():
    with pytest.raises(ValueError):
        projector_symbol(2, 0)


def test_vacuum_annihilated():
    P00 = projector_symbol(0, 0)
    assert star(t, P00).is_zero()
    assert star(P00, tb).is_zero()


def test_hamiltonian_symbol():
    f, fd = ladder(1, 1), ladder(1, 1, "create")
    assert hamiltonian_symbol() == diagonal_symbol(fd @ f, 1) == q


def test_ladder_report_exact():
    report = ladder_relations_check()
    assert report.passed
    assert len(report.checks) == 10
    assert all(c.residual == 0 for c in report.checks)


def test_matrix_elements_vacuum():
    E = matrix_elements()
    half = G.monomial(2, "tb1 t1", 0.5)
    assert E[0][0] == 1 - half
    assert E[1][1] == 1 + half
    assert E[0][0] == exp_nilpotent(-half)


def test_generating_function_extraction():
    phi = generating_function_oracle()
    E = matrix_elements()
    for n in (0, 1):
        for m in (0, 1):
            assert extract(phi, n, m) == restrict(E[n][m])
    assert extract(phi, 0, 0) == 1 - G.monomial(1, "tb1 t1", 0.5)
    with pytest.raises(ValueError):
        restrict(extract(phi, 0, 0))


def test_generating_report():
    report = generating_derivative_check()
    assert report["extraction"].passed
    assert report["vacuum-element"].passed
    assert report["printed-closed-form"].informational


def test_su2_brackets_fix_j3():
    j3 = -q
    assert star_commutator(t, tb, SYMMETRIC) == 2 * j3
    assert star_commutator(tb, j3, SYMMETRIC) == tb
    assert star_commutator(t, j3, SYMMETRIC) == -t
    assert star_commutator(j3, j3, SYMMETRIC).is_zero()


def test_casimir_value():
    # spin one-half: j(j+1)
    assert casimir(t, tb, -q) == G.scalar(1, 0.75)
    assert casimir(t, tb, q) == G.scalar(1, 0.75)


def test_su2_report_marks_only_bracket_solution():
    report = su2_star_check()
    primary = [c for c in report.checks if not c.informational]
    assert {c.id for c in primary} == {"bracket-solution/brackets", "bracket-solution/casimir",
                                       "bracket-solution/j3-self"}
    assert report["bracket-solution/brackets"].passed
    assert not report["bracket-solution/casimir"].passed


def test_odd_basis_operators_have_odd_symbols():
    assert multiply(t, t).is_zero()
    assert diagonal_symbol(basis_operator(1, 0b10), 1) == t
