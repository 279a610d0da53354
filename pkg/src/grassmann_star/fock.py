"""Fock-space matrices for N fermionic modes and the symbol correspondence.

Basis states ``|n_1 .. n_N>`` are indexed by the integer with ``n_1`` as the
least significant bit. Ladder operators use a Jordan-Wigner sign string over
the lower sites (site 1 innermost), so that

    f_i |n> = (-1)^(n_1 + ... + n_{i-1}) |n - e_i>   if n_i = 1.

A normal-ordered operator ``sum a_{m,n} f+^n f-^m`` (creators and
annihilators each in ascending site order) corresponds to the symbol
``sum a_{m,n} thetabar^n theta^m``; in the mask layout of
:mod:`grassmann_star.grassmann` the creators are the low N bits and the
annihilators the high N bits.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .grassmann import GrassmannElement, slots_of


def ladder(n: int, site: int, kind: str = "annihilate") -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of ``f_site`` or its adjoint."""
    if not 1 <= site <= n:
        raise ValueError(f"site {site} outside 1..{n}")
    if kind not in ("annihilate", "create"):
        raise ValueError(f"unknown ladder kind {kind!r}")
    dim = 2**n
    bit = 1 << (site - 1)
    f = np.zeros((dim, dim))
    for state in range(dim):
        if state & bit:
            sign = -1.0 if (state & (bit - 1)).bit_count() & 1 else 1.0
            f[state ^ bit, state] = sign
    return f if kind == "annihilate" else f.T.copy()


@lru_cache(maxsize=None)
def _ladders(n: int) -> tuple[tuple[np.ndarray, ...], tuple[np.ndarray, ...]]:
    ann = tuple(ladder(n, i, "annihilate") for i in range(1, n + 1))
    cre = tuple(a.T.copy() for a in ann)
    return cre, ann


def basis_operator(n: int, mask: int) -> np.ndarray:
    """Operator matrix of the unit monomial ``mask``."""
    cre, ann = _ladders(n)
    op = np.eye(2**n)
    for s in slots_of(mask):
        op = op @ (cre[s] if s < n else ann[s - n])
    return op


@lru_cache(maxsize=None)
def _basis(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Stacked basis operators and the inverse of their flattened matrix."""
    ops = np.array([basis_operator(n, m) for m in range(4**n)])
    cols = ops.reshape(4**n, -1).T
    inv = np.rint(np.linalg.inv(cols))
    # the 4^N normal-ordered monomials must be a basis, exactly
    if not np.array_equal(inv @ cols, np.eye(4**n)):
        raise RuntimeError(f"normal-ordered monomials are not a basis at N={n}")
    ops.setflags(write=False)
    inv.setflags(write=False)
    return ops, inv


def normal_order_decompose(A: np.ndarray) -> dict[tuple[tuple[int, ...], tuple[int, ...]], complex]:
    """Coefficients ``a[(n_vec, m_vec)]`` of ``A = sum a f+^n f-^m``."""
    n = _modes(A)
    _, inv = _basis(n)
    vec = inv @ np.asarray(A, dtype=complex).ravel()
    out = {}
    for mask in np.flatnonzero(vec):
        mask = int(mask)
        nvec = tuple((mask >> i) & 1 for i in range(n))
        mvec = tuple((mask >> (n + i)) & 1 for i in range(n))
        out[(nvec, mvec)] = complex(vec[mask])
    return out


def _modes(A: np.ndarray) -> int:
    A = np.asarray(A)
    dim = A.shape[0]
    if A.ndim != 2 or A.shape[1] != dim or dim & (dim - 1):
        raise ValueError(f"expected a square 2^N matrix, got shape {A.shape}")
    return dim.bit_length() - 1


def symbol_of(A: np.ndarray) -> GrassmannElement:
    n = _modes(A)
    _, inv = _basis(n)
    return GrassmannElement.from_vector(n, inv @ np.asarray(A, dtype=complex).ravel())


def operator_of(a: GrassmannElement) -> np.ndarray:
    ops, _ = _basis(a.n)
    return np.tensordot(a.to_vector(), ops, axes=1)


def oracle_star(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Symbol of the operator product: the definition the star product must meet."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: N={a.n} vs N={b.n}")
    return symbol_of(operator_of(a) @ operator_of(b))


def car_residual(n: int) -> float:
    """Largest deviation from the canonical anticommutation relations."""
    cre, ann = _ladders(n)
    eye = np.eye(2**n)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            d = float(i == j)
            worst = max(
                worst,
                np.abs(ann[i] @ cre[j] + cre[j] @ ann[i] - d * eye).max(),
                np.abs(ann[i] @ ann[j] + ann[j] @ ann[i]).max(),
                np.abs(cre[i] @ cre[j] + cre[j] @ cre[i]).max(),
            )
    return float(worst)
