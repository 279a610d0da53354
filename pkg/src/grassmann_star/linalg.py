"""Dense matrix functions used on coefficient space.

Kept separate from :mod:`scipy.linalg` so that the symbol-side exponential
and the Fock-side oracle (which uses scipy) do not share an implementation.
"""

from __future__ import annotations

from math import factorial

import numpy as np


def expm(A: np.ndarray, tol: float = 1e-17) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor core."""
    A = np.asarray(A, dtype=complex)
    norm = np.abs(A).sum(axis=0).max() if A.size else 0.0
    s = 0
    if norm > 0.5:
        s = int(np.ceil(np.log2(norm / 0.5)))
    X = A / 2**s
    eye = np.eye(A.shape[0], dtype=complex)
    total = eye.copy()
    term = eye.copy()
    for k in range(1, 60):
        term = term @ X / k
        total += term
        if np.abs(term).max() <= tol * np.abs(total).max():
            break
    for _ in range(s):
        total = total @ total
    return total


def _psd_series(M: np.ndarray, coef, tol: float, max_terms: int) -> np.ndarray:
    eye = np.eye(M.shape[0], dtype=complex)
    total = np.zeros_like(eye)
    power = eye.copy()
    for k in range(max_terms):
        term = coef(k) * power
        total += term
        if k > 2 and np.abs(term).max() <= tol * max(1.0, np.abs(total).max()):
            return total
        power = power @ (-M)
    raise ArithmeticError("matrix power series did not converge; norm too large")


def cos_sqrt(M: np.ndarray, tol: float = 1e-16, max_terms: int = 400) -> np.ndarray:
    """``cos(sqrt(M))`` as ``sum_k (-M)^k / (2k)!`` for Hermitian PSD ``M``."""
    return _psd_series(np.asarray(M, dtype=complex), lambda k: 1 / factorial(2 * k), tol, max_terms)


def sinc_sqrt(M: np.ndarray, tol: float = 1e-16, max_terms: int = 400) -> np.ndarray:
    """``sin(sqrt(M)) / sqrt(M)`` as ``sum_k (-M)^k / (2k+1)!``; regular at 0."""
    return _psd_series(np.asarray(M, dtype=complex), lambda k: 1 / factorial(2 * k + 1), tol, max_terms)
