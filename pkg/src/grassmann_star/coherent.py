"""Fermionic coherent states as Fock vectors with Grassmann coefficients.

A vector is a list of 2^N Grassmann elements ``c[k]`` standing for
``sum_k c[k] |k>`` with coefficients written on the left. Basis states carry
the parity of their occupation number and Grassmann numbers anticommute
with odd states and odd operators. With these rules

    |theta> = exp(sum_i f+_i theta_i + f-_i thetabar_i) |0>

(operators written to the left of the Grassmann labels) is normalised,
is an eigenvector of every ``f_i`` with eigenvalue ``theta_i``, and its
diagonal matrix elements ``<theta|A|theta>`` reproduce the normal-ordered symbol map.
All checks here run in a doubled algebra (sites ``1..N`` for theta and
``N+1..2N`` for eta) and never touch the star-product code.
"""

from __future__ import annotations

import numpy as np

from .fock import _ladders
from .grassmann import (
    GrassmannElement,
    exp_nilpotent,
    grade_involution,
    integrate_measure,
    involution,
    multiply,
)
from .report import Report

Vector = list[GrassmannElement]


def _state_parity(k: int) -> int:
    return k.bit_count() & 1


def apply_matrix(M: np.ndarray, vec: Vector, odd: bool) -> Vector:
    """Apply a complex operator of definite parity to a Grassmann vector."""
    moved = [grade_involution(c) if odd else c for c in vec]
    n_alg = vec[0].n
    out = []
    for row in M:
        acc = GrassmannElement.zero(n_alg)
        for col in np.flatnonzero(row):
            acc = acc + complex(row[col]) * moved[col]
        out.append(acc)
    return out


def _displacement(vec: Vector, n_modes: int, offset: int, sign: int = 1) -> Vector:
    """``X vec`` for ``X = sign * sum_i f+_i theta_i + f-_i thetabar_i``.

    ``f theta = -theta f``, so ``X = -sign * sum_i (theta_i f+_i + thetabar_i f-_i)``.
    """
    cre, ann = _ladders(n_modes)
    n_alg = vec[0].n
    out = [GrassmannElement.zero(n_alg) for _ in vec]
    for i in range(n_modes):
        t = GrassmannElement.gen(n_alg, f"t{i + 1 + offset}")
        tb = GrassmannElement.gen(n_alg, f"tb{i + 1 + offset}")
        for g, op in ((t, cre[i]), (tb, ann[i])):
            applied = apply_matrix(op, vec, odd=True)
            out = [o - sign * multiply(g, c) for o, c in zip(out, applied)]
    return out


def exp_displacement(vec: Vector, n_modes: int, offset: int = 0, sign: int = 1) -> Vector:
    """``exp(X) vec``; the series stops once a power vanishes."""
    total = list(vec)
    term = list(vec)
    k = 0
    while True:
        k += 1
        term = [c / k for c in _displacement(term, n_modes, offset, sign)]
        if all(c.is_zero() for c in term):
            return total
        total = [a + b for a, b in zip(total, term)]


def basis_vector(n_modes: int, n_alg: int, k: int = 0) -> Vector:
    vec = [GrassmannElement.zero(n_alg) for _ in range(2**n_modes)]
    vec[k] = GrassmannElement.scalar(n_alg, 1)
    return vec


def coherent_ket(n_modes: int, n_alg: int | None = None, offset: int = 0) -> Vector:
    """``|theta>`` with theta living on sites ``offset+1 .. offset+n_modes``."""
    n_alg = n_modes if n_alg is None else n_alg
    return exp_displacement(basis_vector(n_modes, n_alg, 0), n_modes, offset)


def inner(bra_of: Vector, ket: Vector) -> GrassmannElement:
    """``<psi|phi>`` where ``bra_of`` holds the coefficients of ``|psi>``.

    Taking the adjoint reverses order, ``(c|k>)^+ = <k| c*``; moving the
    product ``c* d`` left past ``<k|`` costs ``(-1)^{p(k) p(c* d)}``.
    """
    n_alg = ket[0].n
    acc = GrassmannElement.zero(n_alg)
    for k, (c, d) in enumerate(zip(bra_of, ket)):
        term = multiply(involution(c), d)
        acc = acc + (grade_involution(term) if _state_parity(k) else term)
    return acc


def diagonal_symbol(A: np.ndarray, n_modes: int, odd: bool | None = None) -> GrassmannElement:
    """``<theta|A|theta>`` computed from the coherent-state vectors."""
    ket = coherent_ket(n_modes)
    if odd is None:
        odd = _operator_parity(A)
    if odd == "mixed":
        even_part, odd_part = _split_operator(A)
        return diagonal_symbol(even_part, n_modes, False) + diagonal_symbol(odd_part, n_modes, True)
    return inner(ket, apply_matrix(A, ket, odd))


def _split_operator(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dim = A.shape[0]
    par = np.array([_state_parity(k) for k in range(dim)])
    odd_mask = (par[:, None] ^ par[None, :]).astype(bool)
    return np.where(odd_mask, 0, A), np.where(odd_mask, A, 0)


def _operator_parity(A: np.ndarray):
    even_part, odd_part = _split_operator(np.asarray(A))
    if not odd_part.any():
        return False
    if not even_part.any():
        return True
    return "mixed"


def resolution_of_identity(n_modes: int) -> list[list[GrassmannElement]]:
    """Entries of ``int dmu(eta) |eta><eta|`` as scalar Grassmann elements.

    ``|eta><eta| = sum c_k |k><l| c_l*``; moving ``c_l*`` left past the
    operator ``|k><l|`` costs ``(-1)^{p(l)(p(k)+p(l))}``.
    """
    ket = coherent_ket(n_modes)
    dim = 2**n_modes
    out = []
    for k in range(dim):
        row = []
        for l in range(dim):
            entry = multiply(ket[k], involution(ket[l]))
            if _state_parity(l) * (_state_parity(k) + _state_parity(l)) & 1:
                entry = -entry
            row.append(integrate_measure(entry))
        out.append(row)
    return out


def overlap_squared(n_modes: int) -> tuple[GrassmannElement, GrassmannElement]:
    """``<theta|eta><eta|theta>`` and the closed form it should equal.

    Both live in the doubled algebra: theta on sites 1..N, eta on N+1..2N.
    """
    n_alg = 2 * n_modes
    th = coherent_ket(n_modes, n_alg, 0)
    et = coherent_ket(n_modes, n_alg, n_modes)
    lhs = multiply(inner(th, et), inner(et, th))
    exponent = GrassmannElement.zero(n_alg)
    for i in range(1, n_modes + 1):
        j = i + n_modes
        d = GrassmannElement.gen(n_alg, f"t{j}") - GrassmannElement.gen(n_alg, f"t{i}")
        db = GrassmannElement.gen(n_alg, f"tb{j}") - GrassmannElement.gen(n_alg, f"tb{i}")
        exponent = exponent - multiply(db, d)
    return lhs, exp_nilpotent(exponent)


def coherent_overlap_check(n: int) -> Report:
    """Resolution of identity and the squared overlap, by exact Berezin calculus."""
    report = Report("coherent-states")
    if n == 0:
        report.add("identity-resolution", "int dmu |eta><eta| = 1", 0.0, tol=0.0)
        report.add("overlap", "|<theta|eta>|^2 = exp(-(etabar-thetabar)(eta-theta))", 0.0, tol=0.0)
        return report
    rows = resolution_of_identity(n)
    worst = 0.0
    for k, row in enumerate(rows):
        for l, entry in enumerate(row):
            target = GrassmannElement.scalar(n, 1.0 if k == l else 0.0)
            worst = max(worst, (entry - target).norm())
    report.add("identity-resolution", "int dmu |eta><eta| = 1", worst, tol=0.0)
    lhs, rhs = overlap_squared(n)
    report.add("overlap", "|<theta|eta>|^2 = exp(-(etabar-thetabar)(eta-theta))",
               (lhs - rhs).norm(), tol=0.0)
    ket = coherent_ket(n)
    report.add("normalisation", "<theta|theta> = 1",
               (inner(ket, ket) - GrassmannElement.scalar(n, 1)).norm(), tol=0.0)
    return report
