"""Grassmann star products on symbols.

Both products are exponentials of commuting even bidifferential operators.
Each elementary operator is a *contraction*: a right derivative on the left
factor paired with a left derivative on the right factor,

    coherent:   sum_i  hbar       (a <-d/dtheta_i)    (d/dthetabar_i -> b)
    symmetric:  sum_i  hbar/2 [ (a <-d/dtheta_i)    (d/dthetabar_i -> b)
                              + (a <-d/dthetabar_i) (d/dtheta_i    -> b) ]

Every contraction squares to zero and they commute with each other, so the
exponential is the product of ``1 + w * P`` over contractions, applied in a
fixed order. The resulting sign convention (left factor differentiated in
order s1, s2, ...; right factor differentiated innermost-first in the same
order) is the one that reproduces the operator product of normal-ordered
symbols; ``tests/test_star_oracle.py`` pins it against the Fock oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grassmann import (
    GrassmannElement,
    left_derivative,
    left_sign,
    merge_sign,
    right_sign,
    theta,
    theta_bar,
)


class Product(enum.Enum):
    COHERENT = "coherent"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class StarKind:
    product: Product = Product.COHERENT
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.product, Product):
            object.__setattr__(self, "product", Product(self.product))
        if self.hbar < 0:
            raise ValueError("hbar must be non-negative")
        object.__setattr__(self, "hbar", float(self.hbar))


COHERENT = StarKind(Product.COHERENT)
SYMMETRIC = StarKind(Product.SYMMETRIC)


class StarExpDivergence(ArithmeticError):
    pass


def contractions(n: int, kind: StarKind) -> list[tuple[int, int, float]]:
    """``(left_slot, right_slot, weight)`` for each elementary contraction."""
    out = []
    for i in range(1, n + 1):
        t, tb = theta(i).slot(n), theta_bar(i).slot(n)
        if kind.product is Product.COHERENT:
            out.append((t, tb, kind.hbar))
        else:
            out.append((t, tb, kind.hbar / 2))
            out.append((tb, t, kind.hbar / 2))
    return out


def star_monomials(ma: int, mb: int, pairs) -> dict[int, float]:
    """Star product of two unit monomials, as ``{mask: coefficient}``."""
    states = [(1.0, ma, mb)]
    for left, right, w in pairs:
        if w == 0:
            continue
        grown = []
        for c, x, y in states:
            grown.append((c, x, y))
            if (x >> left) & 1 and (y >> right) & 1:
                s = right_sign(x, left) * left_sign(y, right)
                grown.append((c * w * s, x ^ (1 << left), y ^ (1 << right)))
        states = grown
    out: dict[int, float] = {}
    for c, x, y in states:
        s = merge_sign(x, y)
        if s:
            out[x | y] = out.get(x | y, 0.0) + s * c
    return {m: c for m, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def structure_constants(n: int, kind: StarKind):
    """COO arrays ``(i, j, k, value)`` with ``e_i * e_j = sum value e_k``."""
    pairs = contractions(n, kind)
    ii, jj, kk, vv = [], [], [], []
    dim = 4**n
    for ma in range(dim):
        for mb in range(dim):
            for mk, c in star_monomials(ma, mb, pairs).items():
                ii.append(ma)
                jj.append(mb)
                kk.append(mk)
                vv.append(c)
    arrays = (np.array(ii, dtype=np.intp), np.array(jj, dtype=np.intp),
              np.array(kk, dtype=np.intp), np.array(vv, dtype=float))
    for arr in arrays:
        arr.setflags(write=False)
    return arrays


def _resolve(kind) -> StarKind:
    if kind is None:
        return COHERENT
    if isinstance(kind, StarKind):
        return kind
    return StarKind(Product(kind))


def _check(a: GrassmannElement, b: GrassmannElement) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: N={a.n} vs N={b.n}")


def star_vectors(n: int, va: np.ndarray, vb: np.ndarray, kind: StarKind) -> np.ndarray:
    i, j, k, v = structure_constants(n, kind)
    w = va[i] * vb[j] * v
    dim = 4**n
    return np.bincount(k, w.real, dim) + 1j * np.bincount(k, w.imag, dim)


def star(a: GrassmannElement, b: GrassmannElement, kind: StarKind | str | None = None) -> GrassmannElement:
    """``a * b`` under the coherent (default) or symmetric star product."""
    _check(a, b)
    kind = _resolve(kind)
    if a.n == 0:
        return GrassmannElement.scalar(0, a.scalar_part * b.scalar_part)
    return GrassmannElement.from_vector(a.n, star_vectors(a.n, a.to_vector(), b.to_vector(), kind))


def star_anticommutator(a, b, kind=None) -> GrassmannElement:
    return star(a, b, kind) + star(b, a, kind)


def star_commutator(a, b, kind=None) -> GrassmannElement:
    return star(a, b, kind) - star(b, a, kind)


def left_matrix(a: GrassmannElement, kind=None) -> np.ndarray:
    """Matrix of ``x -> a * x`` on the 4^N coefficient space."""
    kind = _resolve(kind)
    dim = 4**a.n
    i, j, k, v = structure_constants(a.n, kind)
    out = np.zeros((dim, dim), dtype=complex)
    np.add.at(out, (k, j), a.to_vector()[i] * v)
    return out


def right_matrix(b: GrassmannElement, kind=None) -> np.ndarray:
    """Matrix of ``x -> x * b`` on the 4^N coefficient space."""
    kind = _resolve(kind)
    dim = 4**b.n
    i, j, k, v = structure_constants(b.n, kind)
    out = np.zeros((dim, dim), dtype=complex)
    np.add.at(out, (k, i), b.to_vector()[j] * v)
    return out


def star_power(a: GrassmannElement, k: int, kind=None) -> GrassmannElement:
    out = GrassmannElement.scalar(a.n, 1)
    for _ in range(k):
        out = star(out, a, kind)
    return out


def star_exp(a: GrassmannElement, kind=None, tol: float = 1e-12) -> GrassmannElement:
    """Star exponential ``sum_k a^{*k} / k!``.

    The scalar part is factored out as an ordinary exponential. The rest is
    scaled by ``2**-s`` until its left-multiplication map has 1-norm below
    one half, summed as a series, then squared back ``s`` times (valid
    because ``a`` star-commutes with itself).
    """
    kind = _resolve(kind)
    n = a.n
    c0 = a.scalar_part
    x = a - c0
    dim = 4**n
    if x.is_zero():
        return GrassmannElement.scalar(n, np.exp(c0))
    norm = np.abs(left_matrix(x, kind)).sum(axis=0).max()
    s = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    vx = x.to_vector() / 2**s
    total = np.zeros(dim, dtype=complex)
    total[0] = 1.0
    term = total.copy()
    bound = dim + 1 + 64
    for k in range(1, bound + 1):
        term = star_vectors(n, term, vx, kind) / k
        total = total + term
        size = np.abs(term).max()
        if size == 0 or size < tol * 1e-4 * max(1.0, np.abs(total).max()):
            break
    else:
        raise StarExpDivergence(
            f"star exponential did not converge in {bound} terms (last term norm {size:.3e})"
        )
    for _ in range(s):
        total = star_vectors(n, total, total, kind)
    return GrassmannElement.from_vector(n, np.exp(c0) * total)


def _mode_map(a: GrassmannElement, coef: float) -> GrassmannElement:
    for i in range(1, a.n + 1):
        a = a + coef * left_derivative(theta(i), left_derivative(theta_bar(i), a))
    return a


def t_map(a: GrassmannElement, hbar: float = 1.0) -> GrassmannElement:
    """Equivalence map ``prod_i (1 - hbar/2 d/dtheta_i d/dthetabar_i)``.

    Carries symmetric-product symbols to coherent-product symbols:
    ``t_map(a) * t_map(b) == t_map(a (*) b)``.
    """
    return _mode_map(a, -hbar / 2)


def t_inverse(a: GrassmannElement, hbar: float = 1.0) -> GrassmannElement:
    return _mode_map(a, hbar / 2)


T_map = t_map
