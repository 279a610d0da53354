"""Unitary transformations at symbol level and the covariance question.

An anti-hermitian ``Lambda`` with symbol ``lam`` acts on symbols through the
derivation ``D(a) = lam * a - a * lam``; the transformed symbol of
``exp(-Lambda) A exp(Lambda)`` is ``exp(-D) a``.

Quadratic generators ``Lambda = alpha_ij/2 f+_i f+_j + conj(alpha_ij)/2 f-_i f-_j``
give Bogoliubov transformations ``F- = U f- + V f+`` with

    U = cos sqrt(alpha alpha^+),    V = alpha * sinc sqrt(alpha^+ alpha),

computed here by power series in the PSD matrices (no square roots).

*Covariance* asks whether ``exp(-D) a`` equals ``a`` with each generator
replaced pointwise by its transformed image. For the symmetric product this
holds for every quadratic generator. For the coherent product it holds only
when ``V = 0``: with ``V != 0`` the transformed normal-ordered symbol picks
up contraction terms ``(V V^+)`` that pointwise substitution cannot produce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .fock import _ladders, operator_of, symbol_of
from .grassmann import GrassmannElement, Parity, involution, multiply, parity_of, slots_of
from .linalg import cos_sqrt, expm, sinc_sqrt
from .report import Report
from .star import COHERENT, Product, _resolve, left_matrix, right_matrix, star, star_commutator, t_inverse


def check_alpha(alpha) -> np.ndarray:
    alpha = np.atleast_2d(np.asarray(alpha, dtype=complex))
    if alpha.shape[0] != alpha.shape[1]:
        raise ValueError(f"alpha must be square, got {alpha.shape}")
    if not np.array_equal(alpha.T, -alpha):
        raise ValueError("alpha must be antisymmetric")
    return alpha


def random_alpha(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return m - m.T


def lambda_from_alpha(alpha) -> GrassmannElement:
    """``alpha_ij/2 tb_i tb_j + conj(alpha_ij)/2 t_i t_j``."""
    alpha = check_alpha(alpha)
    n = alpha.shape[0]
    lam = GrassmannElement.zero(n)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            lam = lam + GrassmannElement.monomial(n, f"tb{i + 1} tb{j + 1}", alpha[i, j] / 2)
            lam = lam + GrassmannElement.monomial(n, f"t{i + 1} t{j + 1}", np.conj(alpha[i, j]) / 2)
    return lam


def lambda_operator(alpha) -> np.ndarray:
    """Fock matrix of the quadratic generator, built from ladder matrices."""
    alpha = check_alpha(alpha)
    n = alpha.shape[0]
    cre, ann = _ladders(n)
    out = np.zeros((2**n, 2**n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out += alpha[i, j] / 2 * cre[i] @ cre[j] + np.conj(alpha[i, j]) / 2 * ann[i] @ ann[j]
    return out


def _require_even(lam: GrassmannElement) -> None:
    if parity_of(lam) is not Parity.EVEN:
        raise ValueError("the generator symbol must be even")


def d_lambda(lam: GrassmannElement, a: GrassmannElement, kind=None) -> GrassmannElement:
    _require_even(lam)
    return star_commutator(lam, a, kind)


def d_lambda_matrix(lam: GrassmannElement, kind=None) -> np.ndarray:
    _require_even(lam)
    return left_matrix(lam, kind) - right_matrix(lam, kind)


def transform_symbol(lam: GrassmannElement, a: GrassmannElement, kind=None) -> GrassmannElement:
    """``exp(-D) a`` via the exponential of the 4^N x 4^N derivation matrix."""
    D = d_lambda_matrix(lam, kind)
    return GrassmannElement.from_vector(a.n, expm(-D) @ a.to_vector())


def d_lambda_bracket_residual(lam1, lam2, kind=None, anticommutator: bool = False) -> float:
    """``max |[D1, D2] - D_{[lam1, lam2]}|`` over matrix entries.

    The bracket on the right is the star commutator; ``anticommutator=True``
    measures the alternative reading with ``lam1*lam2 + lam2*lam1``.
    """
    D1 = d_lambda_matrix(lam1, kind)
    D2 = d_lambda_matrix(lam2, kind)
    if anticommutator:
        bracket = star(lam1, lam2, kind) + star(lam2, lam1, kind)
    else:
        bracket = star_commutator(lam1, lam2, kind)
    return float(np.abs(D1 @ D2 - D2 @ D1 - d_lambda_matrix(bracket, kind)).max())


def d_lambda_bracket_check(lam1, lam2, kind=None) -> float:
    """Residual of ``[D1, D2] = D_{{lam1, lam2}}`` with the graded star bracket.

    Both generators are even, so the graded bracket is the star commutator.
    """
    return d_lambda_bracket_residual(lam1, lam2, kind)


@dataclass(frozen=True)
class BogoliubovPair:
    U: np.ndarray
    V: np.ndarray

    def canonical_residual(self) -> float:
        U, V = self.U, self.V
        eye = np.eye(U.shape[0])
        return float(max(np.abs(U @ V.T + V @ U.T).max(),
                         np.abs(U @ U.conj().T + V @ V.conj().T - eye).max()))


def bogoliubov_from_alpha(alpha) -> BogoliubovPair:
    alpha = check_alpha(alpha)
    ad = alpha.conj().T
    return BogoliubovPair(cos_sqrt(alpha @ ad), alpha @ sinc_sqrt(ad @ alpha))


def oracle_conjugated_annihilators(alpha) -> list[np.ndarray]:
    """``exp(-Lambda) f_i exp(Lambda)`` in Fock space (scipy exponential)."""
    lam = lambda_operator(alpha)
    O = scipy.linalg.expm(lam)
    Od = scipy.linalg.expm(-lam)
    _, ann = _ladders(lam.shape[0].bit_length() - 1)
    return [Od @ f @ O for f in ann]


def bogoliubov_oracle_residual(alpha) -> float:
    """Distance between ``U f- + V f+`` and the oracle conjugation."""
    pair = bogoliubov_from_alpha(alpha)
    n = pair.U.shape[0]
    cre, ann = _ladders(n)
    worst = 0.0
    for i, F in enumerate(oracle_conjugated_annihilators(alpha)):
        built = sum(pair.U[i, j] * ann[j] + pair.V[i, j] * cre[j] for j in range(n))
        worst = max(worst, float(np.abs(built - F).max()))
    return worst


def psi_variables(alpha, kind=None) -> tuple[list[GrassmannElement], list[GrassmannElement]]:
    """Transformed generators ``psi_i = exp(-D) t_i`` and ``psibar_i = exp(-D) tb_i``."""
    alpha = check_alpha(alpha)
    n = alpha.shape[0]
    lam = _generator_symbol(lambda_from_alpha(alpha), kind)
    psi = [transform_symbol(lam, GrassmannElement.gen(n, f"t{i + 1}"), kind) for i in range(n)]
    psibar = [transform_symbol(lam, GrassmannElement.gen(n, f"tb{i + 1}"), kind) for i in range(n)]
    return psi, psibar


def _generator_symbol(lam: GrassmannElement, kind) -> GrassmannElement:
    # coherent-product symbol -> symbol for the requested product
    kind = _resolve(kind)
    return t_inverse(lam, kind.hbar) if kind.product is Product.SYMMETRIC else lam


def psi_closed_form(alpha) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Coefficient matrices with ``psi = A t + B tb`` and ``psibar = C t + D tb``."""
    alpha = check_alpha(alpha)
    ad = alpha.conj().T
    A = cos_sqrt(alpha @ ad)
    B = alpha @ sinc_sqrt(ad @ alpha)
    C = -ad @ sinc_sqrt(alpha @ ad)
    D = cos_sqrt(ad @ alpha)
    return A, B, C, D


def substitute(a: GrassmannElement, psi, psibar) -> GrassmannElement:
    """Pointwise substitution ``t_i -> psi_i``, ``tb_i -> psibar_i``."""
    n = a.n
    images = list(psibar) + list(psi)
    for img in images:
        if parity_of(img) is not Parity.ODD and not img.is_zero():
            raise ValueError("substituted generators must be odd")
    out = GrassmannElement.zero(n)
    for mask, c in a.terms.items():
        term = GrassmannElement.scalar(n, c)
        for s in slots_of(mask):
            term = multiply(term, images[s])
        out = out + term
    return out


def check_covariance(lam: GrassmannElement, a: GrassmannElement, kind=None) -> float:
    """``max |exp(-D) a - a(psi, psibar)|`` with ``psi`` the transformed generators."""
    n = a.n
    _require_even(lam)
    if not (involution(lam) + lam).isclose(GrassmannElement.zero(n), 1e-12):
        raise ValueError("the generator symbol must be anti-hermitian")
    D = d_lambda_matrix(lam, kind)
    E = expm(-D)

    def tr(x):
        return GrassmannElement.from_vector(n, E @ x.to_vector())

    psi = [tr(GrassmannElement.gen(n, f"t{i + 1}")) for i in range(n)]
    psibar = [tr(GrassmannElement.gen(n, f"tb{i + 1}")) for i in range(n)]
    for img in psi + psibar:
        if parity_of(img.prune(1e-14)) is Parity.MIXED:
            raise ValueError("the derivation does not map odd elements to odd elements")
    psi = [p.prune(1e-15) for p in psi]
    psibar = [p.prune(1e-15) for p in psibar]
    return (tr(a) - substitute(a, psi, psibar)).norm()


def quartic_witness(n: int = 2, kappa: float = 1.0) -> GrassmannElement:
    """Anti-hermitian quartic generator ``i kappa (tb1 t1)(tb2 t2)``."""
    if n < 2:
        raise ValueError("the quartic witness needs two modes")
    return GrassmannElement.monomial(n, "tb1 t1 tb2 t2", 1j * kappa)


def quartic_witness_input(n: int = 2) -> GrassmannElement:
    return GrassmannElement.monomial(n, "tb1 t1")


def covariance_residual(alpha, kind=None, inputs=None) -> float:
    """Worst covariance residual over a set of symbols (default: all monomials)."""
    alpha = check_alpha(alpha)
    n = alpha.shape[0]
    lam = _generator_symbol(lambda_from_alpha(alpha), kind)
    if inputs is None:
        inputs = [GrassmannElement(n, {m: 1}) for m in range(4**n)]
    return max(check_covariance(lam, a, kind) for a in inputs)


def tilde_star_check(alpha, kind=None) -> Report:
    """The new-variable star relations, evaluated with the original product.

    The anticommutators close exactly (``exp(-D)`` is a star automorphism).
    The ordered relations ``psibar_i * psi_j = psibar_i psi_j`` and
    ``psi_i * psibar_j = psi_i psibar_j + delta_ij`` hold for the coherent
    product only when ``V = 0``; the residual is reported against the
    closed-form contraction ``(B B^+)_{ji}``.
    """
    alpha = check_alpha(alpha)
    n = alpha.shape[0]
    kind = _resolve(kind)
    psi, psibar = psi_variables(alpha, kind)
    rep = Report("tilde-star")
    one = GrassmannElement.scalar(n, 1)
    zero = GrassmannElement.zero(n)
    anti, ordered = 0.0, 0.0
    for i in range(n):
        for j in range(n):
            d = one if i == j else zero
            anti = max(anti,
                       (star(psi[i], psi[j], kind) + star(psi[j], psi[i], kind)).norm(),
                       (star(psibar[i], psibar[j], kind) + star(psibar[j], psibar[i], kind)).norm(),
                       (star(psibar[i], psi[j], kind) + star(psi[j], psibar[i], kind) - d).norm())
            if kind.product is Product.COHERENT:
                ordered = max(ordered,
                              (star(psibar[i], psi[j], kind) - multiply(psibar[i], psi[j])).norm(),
                              (star(psi[i], psibar[j], kind) - multiply(psi[i], psibar[j]) - d).norm(),
                              (star(psi[i], psi[j], kind) - multiply(psi[i], psi[j])).norm(),
                              (star(psibar[i], psibar[j], kind) - multiply(psibar[i], psibar[j])).norm())
    rep.add("anticommutators", "{psi_i,psi_j} = {psibar_i,psibar_j} = 0, {psibar_i,psi_j} = delta_ij",
            anti, tol=1e-10)
    if kind.product is Product.COHERENT:
        _, B, _, _ = psi_closed_form(alpha)
        predicted = float(np.abs(B @ B.conj().T).max()) if n else 0.0
        rep.add("ordered-relations", "psibar_i * psi_j = psibar_i psi_j; psi_i * psibar_j = psi_i psibar_j + delta_ij",
                ordered, tol=1e-10, informational=True,
                note=f"contraction size max|B B^+| = {predicted:.3e}; zero only when V = 0")
    return rep


def symbol_conjugation_residual(lam: GrassmannElement, a: GrassmannElement) -> float:
    """``exp(-D) a`` against ``symbol(exp(-Lambda) A exp(Lambda))`` from the oracle."""
    L = operator_of(lam)
    target = symbol_of(scipy.linalg.expm(-L) @ operator_of(a) @ scipy.linalg.expm(L))
    return (transform_symbol(lam, a) - target).norm()


__all__ = [
    "BogoliubovPair", "bogoliubov_from_alpha", "bogoliubov_oracle_residual", "check_alpha",
    "check_covariance", "covariance_residual", "d_lambda", "d_lambda_bracket_check", "d_lambda_bracket_residual",
    "d_lambda_matrix", "lambda_from_alpha", "lambda_operator", "psi_closed_form",
    "psi_variables", "quartic_witness", "quartic_witness_input", "random_alpha",
    "substitute", "symbol_conjugation_residual", "tilde_star_check", "transform_symbol",
    "COHERENT",
]
