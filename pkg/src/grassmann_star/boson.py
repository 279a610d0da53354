"""Bosonic oscillator symbols and the Voros product.

Two representations are kept side by side:

* :class:`BosonPolynomial`, an exact polynomial ``sum c[a,b] z^a zb^b``
  closed under the Voros product;
* :class:`FockSymbol`, the coefficient matrix over ``Phi[n,m]``, the symbol
  of ``|n><m|``, truncated at a cutoff.

``z`` is the symbol of ``b`` and ``zb`` the symbol of ``b+``; the symbol of
``b+^k b^l`` is ``zb^k z^l``. :class:`GaussianSymbol` handles
``exp(-z zb) * polynomial`` directly, which gives the ladder relations a
route that never touches Fock matrices.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from math import factorial, perm, sqrt
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .report import Report

DEFAULT_CUTOFF = 12


class BosonPolynomial:
    """Finite sum ``sum c[(a, b)] z^a zb^b``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], complex] | None = None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative degree ({a}, {b})")
            c = complex(c)
            if c != 0:
                clean[(int(a), int(b))] = c
        self._terms = clean

    @classmethod
    def z(cls, c: complex = 1) -> "BosonPolynomial":
        return cls({(1, 0): c})

    @classmethod
    def zb(cls, c: complex = 1) -> "BosonPolynomial":
        return cls({(0, 1): c})

    @classmethod
    def scalar(cls, c: complex) -> "BosonPolynomial":
        return cls({(0, 0): c})

    @property
    def terms(self) -> Mapping[tuple[int, int], complex]:
        return MappingProxyType(self._terms)

    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=0)

    def spread(self) -> int:
        """Largest ``a - b``: how far the operator moves a Fock row to the right."""
        return max((a - b for a, b in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def norm(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def _coerce(self, other) -> "BosonPolynomial":
        if isinstance(other, BosonPolynomial):
            return other
        if isinstance(other, (int, float, complex)):
            return BosonPolynomial.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = defaultdict(complex, self._terms)
        for k, c in other._terms.items():
            out[k] += c
        return BosonPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BosonPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return BosonPolynomial({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BosonPolynomial):
            return NotImplemented
        out = defaultdict(complex)
        for (a, b), c in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                out[(a + a2, b + b2)] += c * c2
        return BosonPolynomial(out)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, BosonPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"BosonPolynomial({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    def dz(self, k: int = 1) -> "BosonPolynomial":
        out = {}
        for (a, b), c in self._terms.items():
            if a >= k:
                out[(a - k, b)] = c * perm(a, k)
        return BosonPolynomial(out)

    def dzb(self, k: int = 1) -> "BosonPolynomial":
        out = {}
        for (a, b), c in self._terms.items():
            if b >= k:
                out[(a, b - k)] = c * perm(b, k)
        return BosonPolynomial(out)

    def conjugate(self) -> "BosonPolynomial":
        """Symbol of the adjoint: ``z <-> zb`` with conjugated coefficients."""
        return BosonPolynomial({(b, a): c.conjugate() for (a, b), c in self._terms.items()})

    def to_fock(self, cutoff: int = DEFAULT_CUTOFF) -> "FockSymbol":
        return poly_to_fock(self, cutoff)


def format_poly(p: BosonPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (a, b), c in sorted(p.terms.items()):
        mono = " ".join(["z"] * a + ["zb"] * b)
        coef = f"{c.real:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)"
        parts.append(coef if not mono else f"{coef}*{mono}")
    return " + ".join(parts)


def voros_star(p: BosonPolynomial, q: BosonPolynomial) -> BosonPolynomial:
    """``sum_k (1/k!) d_z^k p * d_zb^k q``; the sum stops at the lower degree."""
    out = BosonPolynomial()
    k = 0
    while True:
        left, right = p.dz(k), q.dzb(k)
        if left.is_zero() or right.is_zero():
            return out
        out = out + (left * right) * (1 / factorial(k))
        k += 1


voros_star_poly = voros_star


@dataclass(frozen=True)
class GaussianSymbol:
    """``exp(-z zb) * poly``, the form taken by the basis symbols ``Phi[n,m]``."""

    poly: BosonPolynomial

    @classmethod
    def basis(cls, n: int, m: int) -> "GaussianSymbol":
        """``Phi[n,m] = exp(-z zb) zb^n z^m / sqrt(n! m!)``, the symbol of ``|n><m|``."""
        return cls(BosonPolynomial({(m, n): 1 / sqrt(factorial(n) * factorial(m))}))

    def __add__(self, other: "GaussianSymbol") -> "GaussianSymbol":
        return GaussianSymbol(self.poly + other.poly)

    def __sub__(self, other: "GaussianSymbol") -> "GaussianSymbol":
        return GaussianSymbol(self.poly - other.poly)

    def __mul__(self, c: complex) -> "GaussianSymbol":
        return GaussianSymbol(self.poly * c)

    __rmul__ = __mul__

    def norm(self) -> float:
        return self.poly.norm()


def _shifted_zb(q: BosonPolynomial) -> BosonPolynomial:
    # (d_zb - z) q
    return q.dzb() - BosonPolynomial.z() * q


def _shifted_z(q: BosonPolynomial) -> BosonPolynomial:
    # (d_z - zb) q
    return q.dz() - BosonPolynomial.zb() * q


def voros_star_gaussian_right(p: BosonPolynomial, g: GaussianSymbol) -> GaussianSymbol:
    """``p * (exp(-z zb) q) = exp(-z zb) sum_k (1/k!) d_z^k p (d_zb - z)^k q``."""
    out = BosonPolynomial()
    q = g.poly
    k = 0
    while not p.dz(k).is_zero():
        out = out + (p.dz(k) * q) * (1 / factorial(k))
        k += 1
        q = _shifted_zb(q)
    return GaussianSymbol(out)


def voros_star_gaussian_left(g: GaussianSymbol, p: BosonPolynomial) -> GaussianSymbol:
    """``(exp(-z zb) q) * p = exp(-z zb) sum_k (1/k!) (d_z - zb)^k q d_zb^k p``."""
    out = BosonPolynomial()
    q = g.poly
    k = 0
    while not p.dzb(k).is_zero():
        out = out + (q * p.dzb(k)) * (1 / factorial(k))
        k += 1
        q = _shifted_z(q)
    return GaussianSymbol(out)


class CutoffMismatch(ValueError):
    pass


class FockSymbol:
    """``sum c[n,m] Phi[n,m]`` with ``0 <= n, m <= cutoff``.

    ``valid`` is the largest row index up to which every row is exact: rows
    above it may be missing contributions from states beyond the cutoff.
    """

    __slots__ = ("_cutoff", "_c", "_valid")

    def __init__(self, cutoff: int, c, valid: int | None = None):
        if cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {cutoff}")
        arr = np.array(c, dtype=complex)
        if arr.shape != (cutoff + 1, cutoff + 1):
            raise ValueError(f"expected a {(cutoff + 1, cutoff + 1)} matrix, got {arr.shape}")
        arr.setflags(write=False)
        self._cutoff = cutoff
        self._c = arr
        self._valid = cutoff if valid is None else min(int(valid), cutoff)

    @classmethod
    def basis(cls, cutoff: int, n: int, m: int) -> "FockSymbol":
        if not (0 <= n <= cutoff and 0 <= m <= cutoff):
            raise ValueError(f"Phi[{n},{m}] lies outside cutoff {cutoff}")
        c = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        c[n, m] = 1
        return cls(cutoff, c)

    @classmethod
    def identity(cls, cutoff: int) -> "FockSymbol":
        return cls(cutoff, np.eye(cutoff + 1))

    @classmethod
    def zero(cls, cutoff: int) -> "FockSymbol":
        return cls(cutoff, np.zeros((cutoff + 1, cutoff + 1)))

    @property
    def cutoff(self) -> int:
        return self._cutoff

    @property
    def c(self) -> np.ndarray:
        return self._c

    @property
    def valid(self) -> int:
        return self._valid

    @property
    def truncated(self) -> bool:
        return self._valid < self._cutoff

    def _check(self, other: "FockSymbol") -> None:
        if not isinstance(other, FockSymbol):
            raise TypeError(f"expected FockSymbol, got {type(other).__name__}")
        if other._cutoff != self._cutoff:
            raise CutoffMismatch(f"cutoff mismatch: {self._cutoff} vs {other._cutoff}")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = FockSymbol.identity(self._cutoff) * other
        self._check(other)
        return FockSymbol(self._cutoff, self._c + other._c, min(self._valid, other._valid))

    __radd__ = __add__

    def __neg__(self):
        return FockSymbol(self._cutoff, -self._c, self._valid)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if not isinstance(s, (int, float, complex)):
            return NotImplemented
        return FockSymbol(self._cutoff, self._c * s, self._valid)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockSymbol):
            return NotImplemented
        return self._cutoff == other._cutoff and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self._cutoff, self._c.tobytes()))

    def __repr__(self):
        return f"FockSymbol(cutoff={self._cutoff}, valid={self._valid}, nnz={np.count_nonzero(self._c)})"

    def norm(self, rows: int | None = None) -> float:
        rows = self._valid if rows is None else rows
        block = self._c[: rows + 1]
        return float(np.abs(block).max()) if block.size else 0.0

    def to_json_dict(self) -> dict:
        return {"cutoff": self._cutoff,
                "c": [[float(v.real), float(v.imag)] for v in self._c.ravel()]}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FockSymbol":
        cutoff = int(data["cutoff"])
        flat = [complex(re, im) for re, im in data["c"]]
        if len(flat) != (cutoff + 1) ** 2:
            raise ValueError(f"expected {(cutoff + 1) ** 2} entries, got {len(flat)}")
        return cls(cutoff, np.array(flat).reshape(cutoff + 1, cutoff + 1))

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text: str) -> "FockSymbol":
        return cls.from_json_dict(json.loads(text))


def _row_reach(c: np.ndarray) -> np.ndarray:
    """Largest nonzero column index per row, -1 for an empty row."""
    nz = c != 0
    last = c.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), last, -1)


def fock_star(x: FockSymbol, y: FockSymbol) -> FockSymbol:
    """Symbol of the product of the two truncated operators.

    ``Phi[n,m] * Phi[k,l] = delta_{m,k} Phi[n,l]``, so the coefficient
    matrices simply multiply. Row ``n`` of the result is exact while row
    ``n`` of ``x`` is exact and only reaches rows of ``y`` that are exact.
    """
    x._check(y)
    reach = _row_reach(x.c)
    ok = reach <= y.valid
    ok[x.valid + 1:] = False
    bad = np.flatnonzero(~ok)
    valid = int(bad[0]) - 1 if bad.size else x.cutoff
    return FockSymbol(x.cutoff, x.c @ y.c, valid)


def fock_matrix_element(n: int, m: int, k: int, l: int) -> float:
    """``<n| b+^k b^l |m>``."""
    if n - k != m - l or n < k or m < l:
        return 0.0
    # one root of an integer keeps diagonal elements such as <n|b+ b|n> = n exact
    return sqrt(perm(n, k) * perm(m, l))


def poly_to_fock(p: BosonPolynomial, cutoff: int = DEFAULT_CUTOFF) -> FockSymbol:
    """Truncated Fock matrix of the operator whose normal symbol is ``p``.

    A term ``z^a zb^b`` is ``b+^b b^a`` and moves row ``n`` to column
    ``n + a - b``, so rows above ``cutoff - spread`` are cut short.
    """
    size = cutoff + 1
    c = np.zeros((size, size), dtype=complex)
    for (a, b), coef in p.terms.items():
        for n in range(b, size):
            m = n - b + a
            if m < size:
                c[n, m] += coef * fock_matrix_element(n, m, b, a)
    return FockSymbol(cutoff, c, cutoff - max(p.spread(), 0))


def gaussian_to_fock(g: GaussianSymbol, cutoff: int = DEFAULT_CUTOFF) -> FockSymbol:
    """Read off ``Phi`` coefficients from ``exp(-z zb) sum c z^a zb^b``."""
    c = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for (a, b), coef in g.poly.terms.items():
        if a > cutoff or b > cutoff:
            raise ValueError(f"term z^{a} zb^{b} lies outside cutoff {cutoff}")
        c[b, a] = coef * sqrt(factorial(a) * factorial(b))
    return FockSymbol(cutoff, c)


def _vacuum_relations(cutoff: int) -> tuple[float, float, float]:
    z, zb = BosonPolynomial.z(), BosonPolynomial.zb()
    phi = FockSymbol.basis(cutoff, 0, 0)
    left = fock_star(poly_to_fock(z, cutoff), phi).norm()
    right = fock_star(phi, poly_to_fock(zb, cutoff)).norm()
    other_side = fock_star(phi, poly_to_fock(z, cutoff)).norm() if cutoff >= 1 else 0.0
    return left, right, other_side


def star_vacuum_check(cutoffs: tuple[int, ...] = (1, 5, DEFAULT_CUTOFF)) -> Report:
    """``z * Phi00 = Phi00 * zb = 0`` through both representations."""
    report = Report("boson-vacuum")
    for cutoff in cutoffs:
        left, right, other = _vacuum_relations(cutoff)
        report.add(f"fock/cutoff-{cutoff}/left", "z * Phi00 = 0", left)
        report.add(f"fock/cutoff-{cutoff}/right", "Phi00 * zb = 0", right)
        report.add(f"fock/cutoff-{cutoff}/nonvacuum-side", "Phi00 * z != 0", other, expect_above=True)
    phi = GaussianSymbol.basis(0, 0)
    report.add("gaussian/left", "z * Phi00 = 0",
               voros_star_gaussian_right(BosonPolynomial.z(), phi).norm())
    report.add("gaussian/right", "Phi00 * zb = 0",
               voros_star_gaussian_left(phi, BosonPolynomial.zb()).norm())
    return report


def _ladder_targets(n: int, m: int):
    """Expected ``(coefficient, (n', m'))`` of the four ladder rules and the two eigen rules."""
    return {
        "z-left": ("z * Phi[n,m] = sqrt(n) Phi[n-1,m]", sqrt(n), (n - 1, m)),
        "zb-left": ("zb * Phi[n,m] = sqrt(n+1) Phi[n+1,m]", sqrt(n + 1), (n + 1, m)),
        "z-right": ("Phi[n,m] * z = sqrt(m+1) Phi[n,m+1]", sqrt(m + 1), (n, m + 1)),
        "zb-right": ("Phi[n,m] * zb = sqrt(m) Phi[n,m-1]", sqrt(m), (n, m - 1)),
        "h-left": ("z zb * Phi[n,m] = n Phi[n,m]", n, (n, m)),
        "h-right": ("Phi[n,m] * z zb = m Phi[n,m]", m, (n, m)),
    }


def _ladder_operands():
    z, zb = BosonPolynomial.z(), BosonPolynomial.zb()
    h = z * zb
    return {"z-left": (z, "left"), "zb-left": (zb, "left"), "z-right": (z, "right"),
            "zb-right": (zb, "right"), "h-left": (h, "left"), "h-right": (h, "right")}


def ladder_relations_check(cutoff: int = DEFAULT_CUTOFF) -> Report:
    """Ladder and eigenvalue rules for every ``Phi[n,m]`` inside the exact domain.

    The Fock route multiplies truncated matrices; only results whose
    ``valid`` rows cover row ``n'`` and whose target stays in range count.
    The Gaussian route applies the Voros product to ``exp(-z zb) * poly``.
    """
    report = Report("boson-ladder")
    operands = _ladder_operands()
    for name, (relation, _, _) in _ladder_targets(0, 0).items():
        poly, side = operands[name]
        fock_worst, gauss_worst, count = 0.0, 0.0, 0
        P = poly_to_fock(poly, cutoff)
        for n in range(cutoff + 1):
            for m in range(cutoff + 1):
                _, coef, (n2, m2) = _ladder_targets(n, m)[name]
                if not (0 <= n2 <= cutoff and 0 <= m2 <= cutoff):
                    if coef != 0:
                        continue  # target falls outside the truncated basis
                phi = FockSymbol.basis(cutoff, n, m)
                got = fock_star(P, phi) if side == "left" else fock_star(phi, P)
                if n2 > got.valid and coef != 0:
                    continue
                want = FockSymbol.zero(cutoff)
                if coef != 0:
                    want = FockSymbol.basis(cutoff, n2, m2) * coef
                fock_worst = max(fock_worst, float(np.abs((got - want).c[: got.valid + 1]).max()))
                g = GaussianSymbol.basis(n, m)
                gg = voros_star_gaussian_right(poly, g) if side == "left" else voros_star_gaussian_left(g, poly)
                gwant = GaussianSymbol.basis(n2, m2) * coef if coef != 0 else GaussianSymbol(BosonPolynomial())
                gauss_worst = max(gauss_worst, (gg - gwant).norm())
                count += 1
        report.add(f"fock/{name}", relation, fock_worst, note=f"{count} basis symbols below cutoff {cutoff}")
        report.add(f"gaussian/{name}", relation, gauss_worst, tol=1e-12,
                   note="floating factorial prefactors; exact up to rounding")

    h = poly_to_fock(operands["h-left"][0], cutoff)
    worst = 0.0
    for n in range(h.valid + 1):
        for m in range(h.valid + 1):
            phi = FockSymbol.basis(cutoff, n, m)
            worst = max(worst, (fock_star(h, phi) - phi * m).norm(), (fock_star(phi, h) - phi * n).norm())
    report.add("printed-eigen-labels", "z zb * Phi[n,m] = m Phi[n,m], Phi[n,m] * z zb = n Phi[n,m]",
               worst, informational=True, note="printed labels are swapped relative to |n><m|")
    return report


def orthogonality_check(cutoff: int = DEFAULT_CUTOFF) -> Report:
    """Implemented rule ``Phi[n,m] * Phi[k,l] = delta_{m,k} Phi[n,l]`` against the printed one."""
    report = Report("boson-orthogonality")
    worst_impl, worst_printed = 0.0, 0.0
    size = min(cutoff, 3) + 1
    for n in range(size):
        for m in range(size):
            for k in range(size):
                for l in range(size):
                    got = fock_star(FockSymbol.basis(cutoff, n, m), FockSymbol.basis(cutoff, k, l))
                    impl = FockSymbol.basis(cutoff, n, l) * float(m == k)
                    printed = FockSymbol.basis(cutoff, n, l) * float(n == l)
                    worst_impl = max(worst_impl, (got - impl).norm())
                    worst_printed = max(worst_printed, (got - printed).norm())
    report.add("implemented", "Phi[n,m] * Phi[k,l] = delta_{m,k} Phi[n,l]", worst_impl)
    report.add("printed", "Phi[m,n] * Phi[m',n'] = delta_{m,n'} Phi[m,n']", worst_printed,
               informational=True, note="printed index pattern does not follow from |n><m| |k><l|")
    return report


def representation_agreement(p: BosonPolynomial, q: BosonPolynomial, cutoff: int) -> float:
    """``poly_to_fock(p * q)`` against ``fock_star`` of the converted factors, on exact rows."""
    direct = poly_to_fock(voros_star(p, q), cutoff)
    via = fock_star(poly_to_fock(p, cutoff), poly_to_fock(q, cutoff))
    rows = min(direct.valid, via.valid)
    if rows < 0:
        return 0.0
    return float(np.abs((direct.c - via.c)[: rows + 1]).max())


def random_polynomial(rng: np.random.Generator, degree: int, density: float = 0.6) -> BosonPolynomial:
    terms = {}
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            if rng.random() < density:
                terms[(a, b)] = complex(rng.normal(), rng.normal())
    return BosonPolynomial(terms)


def boson_report(cutoff: int = DEFAULT_CUTOFF, seed: int = 0, samples: int = 20) -> Report:
    report = Report("boson")
    report.extend(star_vacuum_check(tuple(sorted({1, 5, cutoff}))), "vacuum/")
    report.extend(ladder_relations_check(cutoff), "ladder/")
    report.extend(orthogonality_check(cutoff), "orthogonality/")
    rng = np.random.default_rng(seed)
    degree = max(1, min(4, cutoff // 2))
    worst = max(representation_agreement(random_polynomial(rng, degree), random_polynomial(rng, degree), cutoff)
                for _ in range(samples))
    report.add("representations", "poly_to_fock(p * q) = fock_star(poly_to_fock p, poly_to_fock q)",
               worst, tol=1e-10, note=f"degree <= {degree}, cutoff {cutoff}")
    return report
