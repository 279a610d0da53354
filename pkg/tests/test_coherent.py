import numpy as np
import pytest

from grassmann_star import GrassmannElement as G
from grassmann_star.coherent import coherent_overlap_check, diagonal_symbol
from grassmann_star.fock import ladder, symbol_of


@pytest.mark.parametrize("n", [0, 1, 2])
def test_overlap_report(n):
    report = coherent_overlap_check(n)
    assert report.passed
    assert all(c.residual == 0 for c in report.checks)


def test_diagonal_symbol_of_number_operator():
    f, fd = ladder(1, 1), ladder(1, 1, "create")
    assert diagonal_symbol(fd @ f, 1) == G.monomial(1, "tb1 t1")


@pytest.mark.parametrize("n", [1, 2])
def test_diagonal_symbol_matches_normal_order(n, rng):
    dim = 2**n
    for parity in (0, 1):
        A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        occupation = np.array([bin(k).count("1") % 2 for k in range(dim)])
        keep = (occupation[:, None] ^ occupation[None, :]) == parity
        A = np.where(keep, A, 0)
        assert (diagonal_symbol(A, n) - symbol_of(A)).norm() < 1e-12
