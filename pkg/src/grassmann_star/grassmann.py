"""Exact arithmetic in the complex Grassmann algebra on 2N generators.

The algebra is generated by ``theta_1 .. theta_N`` and ``thetabar_1 ..
thetabar_N``; all generators anticommute pointwise and square to zero.
A monomial is a bitmask over 2N slots in the canonical order

    thetabar_1 < ... < thetabar_N < theta_1 < ... < theta_N

so bit ``i - 1`` is ``thetabar_i`` and bit ``N + i - 1`` is ``theta_i``.
Textual tokens are ``tb<i>`` for ``thetabar_i`` and ``t<i>`` for ``theta_i``.
"""

from __future__ import annotations

import enum
import json
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Union

import numpy as np

Number = Union[int, float, complex]


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"

    def __mul__(self, other: "Parity") -> "Parity":
        if Parity.MIXED in (self, other):
            return Parity.MIXED
        return Parity.EVEN if self is other else Parity.ODD


class Generator(NamedTuple):
    """One generator: ``bar=True`` for thetabar_site, else theta_site."""

    bar: bool
    site: int

    def slot(self, n: int) -> int:
        if not 1 <= self.site <= n:
            raise ValueError(f"site {self.site} outside 1..{n}")
        return self.site - 1 if self.bar else n + self.site - 1

    @property
    def token(self) -> str:
        return f"{'tb' if self.bar else 't'}{self.site}"

    @classmethod
    def parse(cls, token: str) -> "Generator":
        token = token.strip()
        if token.startswith("tb"):
            return cls(True, int(token[2:]))
        if token.startswith("t"):
            return cls(False, int(token[1:]))
        raise ValueError(f"not a generator token: {token!r}")

    @classmethod
    def from_slot(cls, slot: int, n: int) -> "Generator":
        return cls(True, slot + 1) if slot < n else cls(False, slot - n + 1)


GeneratorLike = Union[Generator, str]


def _as_generator(g: GeneratorLike) -> Generator:
    return Generator.parse(g) if isinstance(g, str) else g


def theta(i: int) -> Generator:
    return Generator(False, i)


def theta_bar(i: int) -> Generator:
    return Generator(True, i)


# -- monomial-level sign rules ---------------------------------------------


def merge_sign(a: int, b: int) -> int:
    """Sign of reordering the concatenation ``a . b`` into canonical order.

    Returns 0 when the monomials share a slot.
    """
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        swaps += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def left_sign(mask: int, slot: int) -> int:
    # occupied slots preceding `slot`
    return -1 if (mask & ((1 << slot) - 1)).bit_count() & 1 else 1


def right_sign(mask: int, slot: int) -> int:
    # occupied slots following `slot`
    return -1 if (mask >> (slot + 1)).bit_count() & 1 else 1


def slots_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def sort_sign(seq: Iterable[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct integers)."""
    seq = list(seq)
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


def mask_tokens(mask: int, n: int) -> list[str]:
    return [Generator.from_slot(s, n).token for s in slots_of(mask)]


def parse_monomial(text: str, n: int) -> tuple[int, int]:
    """Parse a whitespace-separated token string into ``(mask, sign)``."""
    seq = [_as_generator(tok).slot(n) for tok in text.split()]
    if len(set(seq)) != len(seq):
        return 0, 0
    mask = 0
    for s in seq:
        mask |= 1 << s
    return mask, sort_sign(seq)


# -- the element type -------------------------------------------------------


class GrassmannElement:
    """Sparse linear combination of canonical Grassmann monomials.

    Instances are immutable. ``terms`` maps monomial masks to complex
    coefficients; zero coefficients are never stored.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, Number] | None = None):
        if n < 0:
            raise ValueError("number of modes must be non-negative")
        full = (1 << (2 * n)) - 1
        clean: dict[int, complex] = {}
        for mask, c in (terms or {}).items():
            if mask & ~full or mask < 0:
                raise ValueError(f"monomial mask {mask:#x} outside {2 * n} slots")
            c = complex(c)
            if c != 0:
                clean[mask] = c
        self._n = n
        self._terms = clean

    # construction helpers
    @classmethod
    def scalar(cls, n: int, c: Number = 1) -> "GrassmannElement":
        return cls(n, {0: c})

    @classmethod
    def zero(cls, n: int) -> "GrassmannElement":
        return cls(n)

    @classmethod
    def gen(cls, n: int, g: GeneratorLike, c: Number = 1) -> "GrassmannElement":
        return cls(n, {1 << _as_generator(g).slot(n): c})

    @classmethod
    def monomial(cls, n: int, tokens: str, c: Number = 1) -> "GrassmannElement":
        """Monomial from tokens in any order, e.g. ``"t2 tb1"``."""
        mask, sign = parse_monomial(tokens, n)
        if sign == 0:
            return cls(n)
        return cls(n, {mask: sign * complex(c)})

    @classmethod
    def from_vector(cls, n: int, vec: np.ndarray) -> "GrassmannElement":
        vec = np.asarray(vec)
        if vec.shape != (4**n,):
            raise ValueError(f"expected coefficient vector of length {4**n}")
        idx = np.flatnonzero(vec)
        return cls(n, {int(k): complex(vec[k]) for k in idx})

    # accessors
    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[int, complex]:
        return MappingProxyType(self._terms)

    def coefficient(self, mono: Union[int, str] = 0) -> complex:
        if isinstance(mono, str):
            mask, sign = parse_monomial(mono, self._n)
            return sign * self._terms.get(mask, 0j) if sign else 0j
        return self._terms.get(mono, 0j)

    @property
    def scalar_part(self) -> complex:
        return self._terms.get(0, 0j)

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(4**self._n, dtype=complex)
        for mask, c in self._terms.items():
            vec[mask] = c
        return vec

    def is_zero(self) -> bool:
        return not self._terms

    def norm(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def even_part(self) -> "GrassmannElement":
        return GrassmannElement(self._n, {m: c for m, c in self._terms.items() if not m.bit_count() & 1})

    def odd_part(self) -> "GrassmannElement":
        return GrassmannElement(self._n, {m: c for m, c in self._terms.items() if m.bit_count() & 1})

    def prune(self, atol: float) -> "GrassmannElement":
        return GrassmannElement(self._n, {m: c for m, c in self._terms.items() if abs(c) > atol})

    def isclose(self, other: "GrassmannElement", atol: float = 1e-12) -> bool:
        return (self - other).norm() <= atol

    # arithmetic
    def _check(self, other: "GrassmannElement") -> None:
        if other._n != self._n:
            raise ValueError(f"dimension mismatch: N={self._n} vs N={other._n}")

    def _coerce(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            self._check(other)
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return GrassmannElement.scalar(self._n, complex(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0j) + c
        return GrassmannElement(self._n, out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self._n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return multiply(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            c = complex(other)
            return GrassmannElement(self._n, {m: c * v for m, v in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self * (1 / complex(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, float, complex)):
            other = GrassmannElement.scalar(self._n, other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"GrassmannElement(n={self._n}, {format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def _fmt_coef(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}j"
    return f"({c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}j)"


def format_element(a: GrassmannElement) -> str:
    """Readable and re-parsable text, e.g. ``1.0 + -0.5*tb1 t1``."""
    if a.is_zero():
        return "0"
    parts = []
    for mask in sorted(a.terms, key=lambda m: (m.bit_count(), m)):
        c = a.terms[mask]
        toks = " ".join(mask_tokens(mask, a.n))
        if not toks:
            parts.append(_fmt_coef(c))
        elif c == 1:
            parts.append(toks)
        else:
            parts.append(f"{_fmt_coef(c)}*{toks}")
    return " + ".join(parts)


# -- operations -------------------------------------------------------------


def multiply(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Pointwise (fully anticommuting) product."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: N={a.n} vs N={b.n}")
    out: dict[int, complex] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = merge_sign(ma, mb)
            if s:
                m = ma | mb
                out[m] = out.get(m, 0j) + s * ca * cb
    return GrassmannElement(a.n, out)


def left_derivative(g: GeneratorLike, a: GrassmannElement) -> GrassmannElement:
    """Derivative acting from the left: move ``g`` to the front, delete it."""
    slot = _as_generator(g).slot(a.n)
    bit = 1 << slot
    return GrassmannElement(
        a.n, {m ^ bit: left_sign(m, slot) * c for m, c in a.terms.items() if m & bit}
    )


def right_derivative(g: GeneratorLike, a: GrassmannElement) -> GrassmannElement:
    """Derivative acting from the right: move ``g`` to the back, delete it."""
    slot = _as_generator(g).slot(a.n)
    bit = 1 << slot
    return GrassmannElement(
        a.n, {m ^ bit: right_sign(m, slot) * c for m, c in a.terms.items() if m & bit}
    )


def berezin_integrate(g: GeneratorLike, a: GrassmannElement) -> GrassmannElement:
    """``int d g  a`` with ``int dg 1 = 0`` and ``int dg g = 1``."""
    return left_derivative(g, a)


def integrate_measure(a: GrassmannElement, sites: Iterable[int] | None = None) -> GrassmannElement:
    """Apply ``prod_i dthetabar_i dtheta_i`` over ``sites``, innermost first."""
    sites = list(range(1, a.n + 1) if sites is None else sites)
    for i in reversed(sites):
        a = berezin_integrate(theta(i), a)
        a = berezin_integrate(theta_bar(i), a)
    return a


def _swap_slot(slot: int, n: int) -> int:
    return slot + n if slot < n else slot - n


def involution(a: GrassmannElement) -> GrassmannElement:
    """Antilinear anti-automorphism swapping theta_i and thetabar_i."""
    n = a.n
    out: dict[int, complex] = {}
    for mask, c in a.terms.items():
        seq = [_swap_slot(s, n) for s in reversed(slots_of(mask))]
        new = 0
        for s in seq:
            new |= 1 << s
        out[new] = sort_sign(seq) * c.conjugate()
    return GrassmannElement(n, out)


def grade_involution(a: GrassmannElement) -> GrassmannElement:
    """Parity automorphism: flips the sign of odd monomials."""
    return GrassmannElement(a.n, {m: (-c if m.bit_count() & 1 else c) for m, c in a.terms.items()})


def exp_nilpotent(a: GrassmannElement) -> GrassmannElement:
    """Terminating exponential of an element with vanishing scalar part."""
    if a.scalar_part != 0:
        raise ValueError("exp_nilpotent needs a zero scalar part; factor exp(scalar) out first")
    result = GrassmannElement.scalar(a.n, 1)
    term = result
    for k in range(1, 2 * a.n + 1):
        term = multiply(term, a) / k
        if term.is_zero():
            break
        result = result + term
    return result


def parity_of(a: GrassmannElement) -> Parity:
    parities = {m.bit_count() & 1 for m in a.terms}
    if not parities or parities == {0}:
        return Parity.EVEN
    if parities == {1}:
        return Parity.ODD
    return Parity.MIXED


def embed(a: GrassmannElement, n: int, offset: int = 0) -> GrassmannElement:
    """Relabel site ``i`` of ``a`` as site ``i + offset`` in an N=n algebra."""
    if a.n + offset > n:
        raise ValueError("target algebra too small")
    out = {}
    for mask, c in a.terms.items():
        new = 0
        for s in slots_of(mask):
            g = Generator.from_slot(s, a.n)
            new |= 1 << Generator(g.bar, g.site + offset).slot(n)
        # uniform shift keeps the canonical order: no sign
        out[new] = c
    return GrassmannElement(n, out)


# -- JSON -------------------------------------------------------------------


def to_json_dict(a: GrassmannElement) -> dict:
    return {
        "n": a.n,
        "terms": [
            {"mono": " ".join(mask_tokens(m, a.n)), "re": a.terms[m].real, "im": a.terms[m].imag}
            for m in sorted(a.terms)
        ],
    }


def from_json_dict(data: Mapping) -> GrassmannElement:
    n = int(data["n"])
    out: dict[int, complex] = {}
    for t in data["terms"]:
        mask, sign = parse_monomial(t["mono"], n)
        if sign == 0:
            raise ValueError(f"repeated generator in {t['mono']!r}")
        if sign != 1:
            raise ValueError(f"monomial {t['mono']!r} is not in canonical order")
        out[mask] = out.get(mask, 0j) + complex(t["re"], t["im"])
    return GrassmannElement(n, out)


def dumps(a: GrassmannElement) -> str:
    return json.dumps(to_json_dict(a))


def loads(text: str) -> GrassmannElement:
    return from_json_dict(json.loads(text))


def random_element(n: int, rng: np.random.Generator, density: float = 1.0,
                   integer: bool = False, parity: Parity | None = None) -> GrassmannElement:
    """Random element; ``integer=True`` draws small Gaussian integers."""
    terms = {}
    for mask in range(4**n):
        if parity is Parity.EVEN and mask.bit_count() & 1:
            continue
        if parity is Parity.ODD and not mask.bit_count() & 1:
            continue
        if rng.random() > density:
            continue
        if integer:
            terms[mask] = complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
        else:
            terms[mask] = complex(rng.normal(), rng.normal())
    return GrassmannElement(n, terms)


__all__ = [
    "GrassmannElement", "Generator", "Parity", "theta", "theta_bar",
    "multiply", "left_derivative", "right_derivative", "berezin_integrate",
    "integrate_measure", "involution", "grade_involution", "exp_nilpotent",
    "parity_of", "embed", "dumps", "loads", "to_json_dict", "from_json_dict",
    "format_element", "random_element",
]
