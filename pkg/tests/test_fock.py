import numpy as np
import pytest
from hypothesis import given

from conftest import elements
from grassmann_star import GrassmannElement as G
from grassmann_star.fock import (
    basis_operator,
    car_residual,
    ladder,
    normal_order_decompose,
    operator_of,
    oracle_star,
    symbol_of,
)
from grassmann_star.grassmann import multiply


def test_single_mode_ladder():
    f = ladder(1, 1)
    np.testing.assert_array_equal(f, [[0, 1], [0, 0]])
    np.testing.assert_array_equal(ladder(1, 1, "create"), f.T)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_car(n):
    assert car_residual(n) == 0


def test_ladder_rejects_bad_site():
    with pytest.raises(ValueError):
        ladder(2, 3)


def test_decompose_examples():
    f, fd = ladder(1, 1), ladder(1, 1, "create")
    assert normal_order_decompose(np.eye(2)) == {((0,), (0,)): 1}
    assert normal_order_decompose(fd @ f) == {((1,), (1,)): 1}


def test_decompose_reconstructs(rng):
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    coeffs = normal_order_decompose(A)
    rebuilt = np.zeros_like(A)
    for (ns, ms), c in coeffs.items():
        term = np.eye(4, dtype=complex)
        for site, k in enumerate(ns, 1):
            term = term @ np.linalg.matrix_power(ladder(2, site, "create"), k)
        for site, k in enumerate(ms, 1):
            term = term @ np.linalg.matrix_power(ladder(2, site), k)
        rebuilt += c * term
    assert np.abs(rebuilt - A).max() < 1e-12


def test_symbols_of_ladders():
    f, fd = ladder(1, 1), ladder(1, 1, "create")
    assert symbol_of(fd @ f) == G.monomial(1, "tb1 t1")
    assert symbol_of(np.eye(2)) == G.scalar(1)
    assert symbol_of(f) == G.gen(1, "t1")
    assert symbol_of(fd) == G.gen(1, "tb1")


def test_operator_of_examples():
    np.testing.assert_array_equal(operator_of(G.gen(1, "t1")), ladder(1, 1))
    np.testing.assert_array_equal(operator_of(G.scalar(2)), np.eye(4))


def test_basis_operator_is_normal_ordered():
    n = 2
    f1, f2 = ladder(n, 1), ladder(n, 2)
    fd1 = ladder(n, 1, "create")
    mask = 0b0101  # tb1 t1
    np.testing.assert_array_equal(basis_operator(n, mask), fd1 @ f1)
    np.testing.assert_array_equal(basis_operator(n, 0b1100), f1 @ f2)


def test_oracle_examples():
    t, tb = G.gen(1, "t1"), G.gen(1, "tb1")
    assert oracle_star(t, tb) == multiply(t, tb) + 1
    b = G.monomial(1, "tb1 t1", 2) + 3
    assert oracle_star(G.scalar(1), b) == b


@given(elements(3))
def test_symbol_operator_round_trip(a):
    assert symbol_of(operator_of(a)) == a


@given(elements(2), elements(2))
def test_operator_of_is_linear(a, b):
    np.testing.assert_allclose(operator_of(a + 2 * b), operator_of(a) + 2 * operator_of(b))
