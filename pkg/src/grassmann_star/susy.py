"""Symbols on the supercoherent states ``|z> x |theta>`` and the superstar product.

A :class:`SuperSymbol` maps each N=1 Grassmann monomial (mask 0 for ``1``,
1 for ``thetabar``, 2 for ``theta``, 3 for ``thetabar theta``) to a bosonic
component. The bosonic factors are even, so the two exponentials in the
superstar product commute and

    (p g) *susy (q h) = (p *voros q) (g * h)

with no extra signs. The tensor-product oracle below confirms this.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping, Union

import numpy as np

from .boson import (
    CutoffMismatch,
    DEFAULT_CUTOFF,
    BosonPolynomial,
    FockSymbol,
    fock_star,
    poly_to_fock,
    random_polynomial,
    voros_star,
)
from .fock import _basis, basis_operator
from .grassmann import GrassmannElement, involution, multiply
from .report import Report
from .star import star

Bosonic = Union[BosonPolynomial, FockSymbol]

MASKS = (0, 1, 2, 3)
MASK_NAMES = {0: "1", 1: "thetabar", 2: "theta", 3: "thetabar theta"}
MASK_TOKENS = {0: "", 1: "tb1", 2: "t1", 3: "tb1 t1"}


class RepresentationMismatch(TypeError):
    pass


def _kind_of(parts: Mapping[int, Bosonic]):
    kinds = {type(p) for p in parts.values()}
    if len(kinds) > 1:
        raise RepresentationMismatch("components mix polynomial and Fock representations")
    if FockSymbol in kinds:
        cutoffs = {p.cutoff for p in parts.values()}
        if len(cutoffs) > 1:
            raise RepresentationMismatch(f"components use different cutoffs {sorted(cutoffs)}")
        return FockSymbol, cutoffs.pop()
    return BosonPolynomial, None


class SuperSymbol:
    """``sum_mask component[mask](z, zb) * monomial[mask](theta, thetabar)``."""

    __slots__ = ("_parts", "_kind", "_cutoff")

    def __init__(self, parts: Mapping[int, Bosonic] | None = None):
        parts = dict(parts or {})
        for mask in parts:
            if mask not in MASKS:
                raise ValueError(f"N=1 monomial mask must be 0..3, got {mask}")
        self._kind, self._cutoff = _kind_of(parts)
        self._parts = parts

    @property
    def parts(self) -> dict[int, Bosonic]:
        return dict(self._parts)

    @property
    def cutoff(self) -> int | None:
        return self._cutoff

    @property
    def is_fock(self) -> bool:
        return self._kind is FockSymbol

    def component(self, mask: int) -> Bosonic:
        if mask in self._parts:
            return self._parts[mask]
        if self.is_fock:
            return FockSymbol.zero(self._cutoff)
        return BosonPolynomial()

    def _check(self, other: "SuperSymbol") -> None:
        if not isinstance(other, SuperSymbol):
            raise TypeError(f"expected SuperSymbol, got {type(other).__name__}")
        if not self._parts or not other._parts:
            return
        if self._kind is not other._kind:
            raise RepresentationMismatch("superstar operands use different bosonic representations")
        if self._cutoff != other._cutoff:
            raise CutoffMismatch(f"cutoffs differ: {self._cutoff} vs {other._cutoff}")

    def __add__(self, other: "SuperSymbol") -> "SuperSymbol":
        self._check(other)
        out = dict(self._parts)
        for mask, p in other._parts.items():
            out[mask] = out[mask] + p if mask in out else p
        return SuperSymbol(out)

    def __neg__(self) -> "SuperSymbol":
        return SuperSymbol({m: -p for m, p in self._parts.items()})

    def __sub__(self, other: "SuperSymbol") -> "SuperSymbol":
        return self + (-other)

    def __mul__(self, c: complex) -> "SuperSymbol":
        if not isinstance(c, (int, float, complex)):
            return NotImplemented
        return SuperSymbol({m: p * c for m, p in self._parts.items()})

    __rmul__ = __mul__

    def norm(self) -> float:
        return max((p.norm() for p in self._parts.values()), default=0.0)

    def valid(self) -> int | None:
        if not self.is_fock:
            return None
        return min((p.valid for p in self._parts.values()), default=self._cutoff)

    def to_fock(self, cutoff: int = DEFAULT_CUTOFF) -> "SuperSymbol":
        if self.is_fock:
            return self
        return SuperSymbol({m: poly_to_fock(p, cutoff) for m, p in self._parts.items()})

    def __eq__(self, other):
        if not isinstance(other, SuperSymbol):
            return NotImplemented
        return (self - other).norm() == 0

    __hash__ = None

    def __repr__(self):
        return f"SuperSymbol({self})"

    def __str__(self):
        shown = {m: p for m, p in self._parts.items() if not (isinstance(p, BosonPolynomial) and p.is_zero())}
        if not shown:
            return "0"
        return " + ".join(f"({p})*[{MASK_NAMES[m]}]" for m, p in sorted(shown.items()))


def _unit(mask: int) -> GrassmannElement:
    return GrassmannElement(1, {mask: 1})


def _bosonic_star(p: Bosonic, q: Bosonic) -> Bosonic:
    if isinstance(p, FockSymbol):
        return fock_star(p, q)
    return voros_star(p, q)


def super_star(x: SuperSymbol, y: SuperSymbol, kind=None) -> SuperSymbol:
    """Superstar product: Voros on the bosonic factors, Grassmann star on the monomials."""
    x._check(y)
    out: dict[int, Bosonic] = {}
    for ma, p in x.parts.items():
        for mb, q in y.parts.items():
            g = star(_unit(ma), _unit(mb), kind)
            if g.is_zero():
                continue
            b = _bosonic_star(p, q)
            for mask, c in g.terms.items():
                term = b * c
                out[mask] = out[mask] + term if mask in out else term
    return SuperSymbol(out)


def super_multiply(x: SuperSymbol, y: SuperSymbol) -> SuperSymbol:
    """Pointwise product of super symbols (the superstar product at zero deformation)."""
    x._check(y)
    if x.is_fock or y.is_fock:
        raise NotImplementedError("pointwise products need the polynomial representation")
    out: dict[int, BosonPolynomial] = {}
    for ma, p in x.parts.items():
        for mb, q in y.parts.items():
            g = multiply(_unit(ma), _unit(mb))
            for mask, c in g.terms.items():
                term = (p * q) * c
                out[mask] = out[mask] + term if mask in out else term
    return SuperSymbol(out)


def from_grassmann(a: GrassmannElement) -> SuperSymbol:
    """Lift an N=1 Grassmann element to a super symbol with constant bosonic parts."""
    if a.n != 1:
        raise ValueError(f"super symbols carry one fermionic mode, got N={a.n}")
    return SuperSymbol({mask: BosonPolynomial.scalar(c) for mask, c in a.terms.items()})


def from_boson(p: BosonPolynomial) -> SuperSymbol:
    return SuperSymbol({0: p} if not p.is_zero() else {})


def to_json_dict(x: SuperSymbol) -> dict:
    if x.is_fock:
        return {"cutoff": x.cutoff,
                "parts": [{"mono": MASK_TOKENS[m], "fock": p.to_json_dict()} for m, p in sorted(x.parts.items())]}
    return {"parts": [
        {"mono": MASK_TOKENS[m],
         "poly": [{"z": a, "zb": b, "re": c.real, "im": c.imag} for (a, b), c in sorted(p.terms.items())]}
        for m, p in sorted(x.parts.items()) if not p.is_zero()]}


def super_anticommutator(x: SuperSymbol, y: SuperSymbol) -> SuperSymbol:
    return super_star(x, y) + super_star(y, x)


def super_commutator(x: SuperSymbol, y: SuperSymbol) -> SuperSymbol:
    return super_star(x, y) - super_star(y, x)


def super_involution(x: SuperSymbol) -> SuperSymbol:
    """Adjoint symbol: conjugate the bosonic part and apply the Grassmann involution."""
    if x.is_fock:
        raise NotImplementedError("involution is defined on the polynomial representation")
    out = {}
    for mask, p in x.parts.items():
        (img, sign), = involution(_unit(mask)).terms.items()
        out[img] = p.conjugate() * sign
    return SuperSymbol(out)


def supercharge_symbols() -> tuple[SuperSymbol, SuperSymbol, SuperSymbol]:
    """``h = zb z + thetabar theta``, ``q- = z thetabar``, ``q+ = zb theta``."""
    z, zb = BosonPolynomial.z(), BosonPolynomial.zb()
    h = SuperSymbol({0: z * zb, 3: BosonPolynomial.scalar(1)})
    q_minus = SuperSymbol({1: z})
    q_plus = SuperSymbol({2: zb})
    return h, q_minus, q_plus


def _residual(x: SuperSymbol, y: SuperSymbol) -> float:
    """Largest difference, on exact rows when the symbols are truncated."""
    d = x - y
    if not d.is_fock:
        return d.norm()
    rows = min(v for v in (x.valid(), y.valid()) if v is not None)
    return max((p.norm(rows) for p in d.parts.values()), default=0.0)


# tensor-product oracle: truncated boson matrix (x) 2x2 fermion matrix


def super_operator(x: SuperSymbol, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    x = x.to_fock(cutoff)
    size = x.cutoff + 1
    total = np.zeros((2 * size, 2 * size), dtype=complex)
    for mask, p in x.parts.items():
        total += np.kron(p.c, basis_operator(1, mask))
    return total


def super_symbol_of(M: np.ndarray, valid: int) -> SuperSymbol:
    size = M.shape[0] // 2
    _, inv = _basis(1)
    blocks = M.reshape(size, 2, size, 2).transpose(1, 3, 0, 2).reshape(4, size, size)
    parts = {}
    for mask in MASKS:
        c = np.tensordot(inv[mask], blocks, axes=1)
        if np.any(c):
            parts[mask] = FockSymbol(size - 1, c, valid)
    return SuperSymbol(parts)


def oracle_super_star(x: SuperSymbol, y: SuperSymbol, cutoff: int = DEFAULT_CUTOFF) -> SuperSymbol:
    """Symbol of the product of the tensor-product operators.

    Rows are marked exact exactly where the truncated Fock route is exact.
    """
    x, y = x.to_fock(cutoff), y.to_fock(cutoff)
    valid = super_star(x, y).valid()
    return super_symbol_of(super_operator(x, cutoff) @ super_operator(y, cutoff),
                           cutoff if valid is None else valid)


def hamiltonian_operator(cutoff: int) -> np.ndarray:
    number = np.diag(np.arange(cutoff + 1, dtype=float))
    occupation = basis_operator(1, 0b11)
    return np.kron(number, np.eye(2)) + np.kron(np.eye(cutoff + 1), occupation)


def random_super_symbol(rng: np.random.Generator, degree: int = 2) -> SuperSymbol:
    return SuperSymbol({m: random_polynomial(rng, degree) for m in MASKS})


def sl11_check(cutoff: int = DEFAULT_CUTOFF) -> Report:
    """Closure of ``h, q-, q+`` under the superstar product, polynomial and truncated."""
    report = Report("sl11")
    h, qm, qp = supercharge_symbols()
    # the truncated route multiplies sqrt(n) entries, so it is exact only up to rounding
    fock_tol = 64 * np.finfo(float).eps * (cutoff + 1)
    for label, tol, (H, QM, QP) in (
            ("poly", 0.0, (h, qm, qp)),
            ("fock", fock_tol, (h.to_fock(cutoff), qm.to_fock(cutoff), qp.to_fock(cutoff)))):
        def add(id, relation, residual, label=label, tol=tol):
            report.add(f"{label}/{id}", relation, residual, tol=tol)
        add("anticommutator", "{q-, q+} = h", _residual(super_anticommutator(QM, QP), H))
        add("nilpotent-plus", "q+ * q+ = 0", _residual(super_star(QP, QP), QP * 0))
        add("nilpotent-minus", "q- * q- = 0", _residual(super_star(QM, QM), QM * 0))
        add("conserved-plus", "q+ * h = h * q+", _residual(super_star(QP, H), super_star(H, QP)))
        add("conserved-minus", "q- * h = h * q-", _residual(super_star(QM, H), super_star(H, QM)))
    report.add("involution", "(q-)^+ = q+", (super_involution(qm) - qp).norm())
    report.add("hamiltonian-selfadjoint", "h^+ = h", (super_involution(h) - h).norm())

    # which operator each printed supercharge symbol stands for
    a = np.diag(np.sqrt(np.arange(1, cutoff + 1)), 1)
    f = basis_operator(1, 0b10)
    Q_minus, Q_plus = np.kron(a.T, f), np.kron(a, f.T)
    qm_op, qp_op = super_operator(qm, cutoff), super_operator(qp, cutoff)
    report.add("printed-labels", "<z,theta|Q-|z,theta> = z thetabar",
               float(np.abs(qm_op - Q_minus).max()), informational=True,
               note="z thetabar is the symbol of b f+; the printed labels are exchanged")
    report.add("swapped-labels", "<z,theta|Q+|z,theta> = z thetabar, <z,theta|Q-|z,theta> = zb theta",
               max(float(np.abs(qm_op - Q_plus).max()), float(np.abs(qp_op - Q_minus).max())))
    report.add("hamiltonian-operator", "<z,theta|H|z,theta> = zb z + thetabar theta",
               float(np.abs(super_operator(h, cutoff) - hamiltonian_operator(cutoff)).max()))
    return report


def degeneracy_check(cutoff: int = DEFAULT_CUTOFF) -> Report:
    """``h * (Phi[n,n] P[s,s]) = (n + s) Phi[n,n] P[s,s]``, twofold for ``n + s >= 1``."""
    report = Report("degeneracy")
    h = supercharge_symbols()[0].to_fock(cutoff)
    projectors = {0: {0: 1, 3: -1}, 1: {3: 1}}  # P00 = 1 - thetabar theta, P11 = thetabar theta
    worst, levels = 0.0, defaultdict(int)
    for n in range(cutoff + 1):
        phi = FockSymbol.basis(cutoff, n, n)
        for s in (0, 1):
            P = SuperSymbol({mask: phi * c for mask, c in projectors[s].items()})
            left, right = super_star(h, P), super_star(P, h)
            if n > min(left.valid(), right.valid()):
                continue
            worst = max(worst, _residual(left, P * (n + s)), _residual(right, P * (n + s)))
            levels[n + s] += 1
    report.add("eigenvalues", "h * Phi[n,n] P[s,s] = (n + s) Phi[n,n] P[s,s]", worst)
    top = max(levels)
    counted = {e: k for e, k in levels.items() if e < top}
    expected = {e: (1 if e == 0 else 2) for e in counted}
    spectrum = np.rint(np.diag(hamiltonian_operator(cutoff))).astype(int)
    oracle = {e: int(np.count_nonzero(spectrum == e)) for e in counted}
    report.add("multiplicity", "dim{h = e} = 2 for e >= 1, 1 for e = 0",
               sum(abs(counted[e] - expected[e]) for e in counted))
    report.add("multiplicity-oracle", "multiplicities match the spectrum of b+b + f+f",
               sum(abs(counted[e] - oracle[e]) for e in counted))
    return report


def oracle_check(cutoff: int = DEFAULT_CUTOFF, seed: int = 0, samples: int = 20) -> Report:
    """Superstar product against the tensor-product operator product on exact rows."""
    report = Report("susy-oracle")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x, y = random_super_symbol(rng), random_super_symbol(rng)
        got = super_star(x, y).to_fock(cutoff)
        via_fock = super_star(x.to_fock(cutoff), y.to_fock(cutoff))
        oracle = oracle_super_star(x, y, cutoff)
        worst = max(worst, _residual(via_fock, oracle), _residual(got, oracle))
    report.add("tensor-product", "sym(X Y) = sym(X) *susy sym(Y)", worst, tol=1e-10,
               note=f"{samples} random symbols of degree <= 2, cutoff {cutoff}")
    return report


def associativity_residual(rng: np.random.Generator, samples: int = 20, degree: int = 2) -> float:
    worst = 0.0
    for _ in range(samples):
        x, y, z = (random_super_symbol(rng, degree) for _ in range(3))
        worst = max(worst, _residual(super_star(super_star(x, y), z), super_star(x, super_star(y, z))))
    return worst


def susy_report(cutoff: int = DEFAULT_CUTOFF, seed: int = 0) -> Report:
    report = Report("susy")
    report.extend(sl11_check(cutoff), "sl11/")
    report.extend(degeneracy_check(cutoff), "degeneracy/")
    report.extend(oracle_check(cutoff, seed), "oracle/")
    report.add("associativity", "(x * y) * z = x * (y * z)",
               associativity_residual(np.random.default_rng(seed)), tol=1e-12)
    return report
