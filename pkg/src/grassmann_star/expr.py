"""A small expression language for Grassmann, bosonic and super symbols.

Grammar, loosest binding first::

    expr    := star (('+' | '-') star)*
    star    := product (('@' | '@@' | '@s') product)*
    product := unary ('*'? unary)*      # juxtaposition multiplies
    unary   := ('-' | '+') unary | primary
    primary := NUMBER | GEN | 'exp' '(' expr ')' | '(' expr ')'

``@`` is the session's star product (coherent unless configured
otherwise), ``@@`` the symmetric one and ``@s`` the superstar product.
Generators are ``t<i>``, ``tb<i>``, ``z`` and ``zb``; ``θ<i>`` and
``θ̄<i>`` are accepted as aliases. Numbers may carry a
``j`` or ``i`` suffix, and a bare ``i`` is the imaginary unit.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass, field
from typing import Union

from .boson import BosonPolynomial
from .grassmann import GrassmannElement, exp_nilpotent, multiply
from .star import COHERENT, Product, StarKind, star
from .susy import SuperSymbol, from_boson, from_grassmann, super_multiply, super_star


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class EvalError(ValueError):
    pass


# -- tokens -----------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, GEN, EXP, OP, LPAREN, RPAREN, END
    text: str
    line: int
    col: int
    value: object = None


_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?([ji])?")
_WORD = re.compile(r"[A-Za-z_θ][A-Za-z0-9_̄]*")
_GEN = re.compile(r"(tb|t)(\d+)")


def _word_token(word: str, line: int, col: int) -> Token:
    if word == "exp":
        return Token("EXP", word, line, col)
    if word == "i":
        return Token("NUM", word, line, col, 1j)
    if word in ("z", "zb"):
        return Token("GEN", word, line, col, word)
    if word.startswith("θ"):
        rest = word[1:]
        prefix = "tb" if rest.startswith("̄") else "t"
        word = prefix + rest.lstrip("̄")
    m = _GEN.fullmatch(word)
    if m:
        return Token("GEN", word, line, col, (m.group(1) == "tb", int(m.group(2))))
    raise ParseError(f"unknown name {word!r}", line, col)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        ch = source[pos]
        col = pos - line_start + 1
        if ch == "\n":
            line, line_start = line + 1, pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        m = _NUMBER.match(source, pos)
        if m:
            value = float(m.group(1) + (m.group(2) or ""))
            tokens.append(Token("NUM", m.group(0), line, col, value * 1j if m.group(3) else value))
            pos = m.end()
            continue
        m = _WORD.match(source, pos)
        if m:
            tokens.append(_word_token(m.group(0), line, col))
            pos = m.end()
            continue
        if ch == "@":
            op = "@@" if source.startswith("@@", pos) else "@s" if source.startswith("@s", pos) else "@"
            tokens.append(Token("OP", op, line, col))
            pos += len(op)
            continue
        if ch in "+-*":
            tokens.append(Token("OP", ch, line, col))
        elif ch == "(":
            tokens.append(Token("LPAREN", ch, line, col))
        elif ch == ")":
            tokens.append(Token("RPAREN", ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        pos += 1
    tokens.append(Token("END", "", line, pos - line_start + 1))
    return tokens


# -- syntax tree --------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: complex
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Gen:
    name: str  # canonical token: t<i>, tb<i>, z, zb
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '@', '@@', '@s'
    left: "Node"
    right: "Node"
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Exp:
    arg: "Node"
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


Node = Union[Num, Gen, Neg, BinOp, Exp]

_PRIMARY_START = ("NUM", "GEN", "EXP", "LPAREN")


class _Parser:
    def __init__(self, tokens: list[Token], n: int):
        self.tokens = tokens
        self.i = 0
        self.n = n

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text in ops

    def parse(self) -> Node:
        if self.peek().kind == "END":
            self.fail("empty expression")
        node = self.expr()
        tok = self.peek()
        if tok.kind == "RPAREN":
            self.fail("unbalanced ')'")
        if tok.kind != "END":
            self.fail(f"unexpected {tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.star()
        while self.at_op("+", "-"):
            tok = self.advance()
            node = BinOp(tok.text, node, self.star(), (tok.line, tok.col))
        return node

    def star(self) -> Node:
        node = self.product()
        while self.at_op("@", "@@", "@s"):
            tok = self.advance()
            node = BinOp(tok.text, node, self.product(), (tok.line, tok.col))
        return node

    def product(self) -> Node:
        node = self.unary()
        while True:
            tok = self.peek()
            if self.at_op("*"):
                self.advance()
            elif tok.kind not in _PRIMARY_START:
                return node
            node = BinOp("*", node, self.unary(), (tok.line, tok.col))

    def unary(self) -> Node:
        if self.at_op("-", "+"):
            tok = self.advance()
            operand = self.unary()
            return Neg(operand, (tok.line, tok.col)) if tok.text == "-" else operand
        return self.primary()

    def primary(self) -> Node:
        tok = self.peek()
        if tok.kind == "NUM":
            self.advance()
            return Num(complex(tok.value), (tok.line, tok.col))
        if tok.kind == "GEN":
            self.advance()
            return Gen(self.generator(tok), (tok.line, tok.col))
        if tok.kind == "EXP":
            self.advance()
            if self.peek().kind != "LPAREN":
                self.fail("expected '(' after exp")
            return Exp(self.group(), (tok.line, tok.col))
        if tok.kind == "LPAREN":
            return self.group()
        if tok.kind == "END":
            self.fail("unexpected end of input")
        if tok.kind == "RPAREN":
            self.fail("unbalanced ')'")
        self.fail(f"unexpected {tok.text!r}")

    def group(self) -> Node:
        open_tok = self.advance()
        node = self.expr()
        if self.peek().kind != "RPAREN":
            self.fail(f"unbalanced '(' opened at line {open_tok.line}, col {open_tok.col}")
        self.advance()
        return node

    def generator(self, tok: Token) -> str:
        if isinstance(tok.value, str):
            return tok.value
        bar, site = tok.value
        if not 1 <= site <= self.n:
            self.fail(f"generator index {site} outside 1..{self.n}", tok)
        return f"{'tb' if bar else 't'}{site}"


def parse(source: str, n: int) -> Node:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _Parser(tokenize(source), n).parse()


# -- printer --------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "@": 2, "@@": 2, "@s": 2, "*": 3}
_UNARY = 4
_ATOM = 5


def _format_number(c: complex) -> str:
    def real(x: float) -> str:
        return str(int(x)) if x.is_integer() and abs(x) < 1e15 else repr(x)

    c = complex(c)
    if c.imag == 0:
        return real(c.real)
    if c.real == 0:
        return real(c.imag) + "j"
    return f"({real(c.real)} + {real(c.imag)}j)"


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _UNARY
    if isinstance(node, Num) and (node.value.real < 0 or node.value.imag < 0):
        return _UNARY
    return _ATOM


def to_source(node: Node) -> str:
    """Canonical text; parsing it gives back an equal tree."""
    return _print(node, 0)


def _print(node: Node, min_prec: int) -> str:
    text = _print_bare(node)
    return f"({text})" if _prec(node) < min_prec else text


def _print_bare(node: Node) -> str:
    if isinstance(node, Num):
        v = node.value
        if v.real < 0 or v.imag < 0:
            return "-" + _format_number(-v)
        return _format_number(v)
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Exp):
        return f"exp({_print(node.arg, 0)})"
    if isinstance(node, Neg):
        return "-" + _print(node.operand, _UNARY)
    p = _PREC[node.op]
    left, right = _print(node.left, p), _print(node.right, p + 1)
    if node.op == "*":
        sep = " * " if right.startswith("-") else " "
        return left + sep + right
    return f"{left} {node.op} {right}"


# -- evaluation -----------------------------------------------------------------


@dataclass(frozen=True)
class EvalConfig:
    n: int = 1
    kind: StarKind = COHERENT
    super: bool | None = None  # None: decide from the expression


def _walk(node: Node):
    yield node
    for child in (getattr(node, a) for a in ("operand", "left", "right", "arg") if hasattr(node, a)):
        yield from _walk(child)


def needs_super(node: Node) -> bool:
    return any((isinstance(x, Gen) and x.name in ("z", "zb")) or
               (isinstance(x, BinOp) and x.op == "@s") for x in _walk(node))


Value = Union[GrassmannElement, SuperSymbol]


def evaluate(node: Node, config: EvalConfig = EvalConfig()) -> Value:
    wants_super = needs_super(node)
    use_super = wants_super if config.super is None else config.super
    if wants_super and not use_super:
        raise EvalError("bosonic generators or '@s' need a super session")
    if use_super and config.n != 1:
        raise EvalError(f"super symbols carry one fermionic mode; got n={config.n}")
    return _Evaluator(config, use_super).eval(node)


def evaluate_source(source: str, config: EvalConfig = EvalConfig()) -> Value:
    return evaluate(parse(source, config.n), config)


class _Evaluator:
    def __init__(self, config: EvalConfig, use_super: bool):
        self.config = config
        self.super = use_super

    def lift(self, a: GrassmannElement) -> Value:
        return from_grassmann(a) if self.super else a

    def eval(self, node: Node) -> Value:
        method = getattr(self, f"_{type(node).__name__.lower()}")
        return method(node)

    def _num(self, node: Num) -> Value:
        return self.lift(GrassmannElement.scalar(self.config.n, node.value))

    def _gen(self, node: Gen) -> Value:
        if node.name == "z":
            return from_boson(BosonPolynomial.z())
        if node.name == "zb":
            return from_boson(BosonPolynomial.zb())
        return self.lift(GrassmannElement.gen(self.config.n, node.name))

    def _neg(self, node: Neg) -> Value:
        return self.eval(node.operand) * -1

    def _exp(self, node: Exp) -> Value:
        arg = self.eval(node.arg)
        if self.super:
            arg = self._as_grassmann(arg, node)
        c = arg.scalar_part
        try:
            scale = cmath.exp(c)
        except OverflowError:
            line, col = node.pos
            raise EvalError(f"line {line}, col {col}: exp overflows at scalar part {c}") from None
        out = exp_nilpotent(arg - c) * scale
        return self.lift(out)

    def _as_grassmann(self, x: SuperSymbol, node: Node) -> GrassmannElement:
        terms = {}
        for mask, p in x.parts.items():
            if any(k != (0, 0) for k in p.terms):
                line, col = node.pos
                raise EvalError(f"line {line}, col {col}: exp of a non-constant bosonic symbol is not polynomial")
            terms[mask] = p.terms.get((0, 0), 0)
        return GrassmannElement(1, terms)

    def _binop(self, node: BinOp) -> Value:
        a, b = self.eval(node.left), self.eval(node.right)
        op = node.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return super_multiply(a, b) if self.super else multiply(a, b)
        if self.super:
            if op == "@@":
                line, col = node.pos
                raise EvalError(f"line {line}, col {col}: '@@' is defined on Grassmann symbols only")
            return super_star(a, b, StarKind(Product.COHERENT, self.config.kind.hbar))
        kind = self.config.kind
        if op == "@@":
            kind = StarKind(Product.SYMMETRIC, kind.hbar)
        return star(a, b, kind)
