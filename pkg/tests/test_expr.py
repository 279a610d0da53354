import pytest
from hypothesis import given
from hypothesis import strategies as st

from grassmann_star import GrassmannElement as G
from grassmann_star.boson import BosonPolynomial as P
from grassmann_star.expr import (
    BinOp,
    EvalConfig,
    EvalError,
    Exp,
    Gen,
    Neg,
    Num,
    ParseError,
    evaluate,
    evaluate_source,
    parse,
    to_source,
    tokenize,
)
from grassmann_star.star import SYMMETRIC, star
from grassmann_star.susy import SuperSymbol

t1, tb1 = G.gen(1, "t1"), G.gen(1, "tb1")


def ev(src, n=1, **kw):
    return evaluate_source(src, EvalConfig(n=n, **kw))


def test_structure():
    assert parse("tb1 t1", 1) == BinOp("*", Gen("tb1"), Gen("t1"))
    assert parse("t1 @ tb1", 1) == BinOp("@", Gen("t1"), Gen("tb1"))
    assert parse("t1 @@ tb1", 1).op == "@@"


def test_precedence():
    # product binds tighter than star, star tighter than sum
    assert parse("t1 tb1 @ t1 + 1", 1) == BinOp("+", BinOp("@", BinOp("*", Gen("t1"), Gen("tb1")), Gen("t1")),
                                                 Num(1))
    assert parse("t1 - tb1 - 1", 1) == BinOp("-", BinOp("-", Gen("t1"), Gen("tb1")), Num(1))
    assert parse("t1 @ tb1 @ t1", 1).left == BinOp("@", Gen("t1"), Gen("tb1"))


def test_unicode_alias():
    assert parse("θ̄1 θ1", 1) == parse("tb1 t1", 1)


def test_examples():
    assert ev("t1 @ tb1") == t1 * tb1 + 1
    assert ev("exp(tb1 t1)") == 1 + tb1 * t1


def test_super_example():
    got = ev("(z @s zb) + (t1 @s tb1)")
    assert isinstance(got, SuperSymbol)
    z, zb = P.z(), P.zb()
    assert got.component(0) == z * zb + 2
    assert got.component(3) == P.scalar(-1)


def test_at_follows_session_product():
    assert ev("t1 @ tb1", kind=SYMMETRIC) == star(t1, tb1, SYMMETRIC)
    assert ev("t1 @@ tb1") == star(t1, tb1, SYMMETRIC)


def test_numbers():
    assert ev("2.5i t1") == t1 * 2.5j
    assert ev("1e-1") == G.scalar(1, 0.1)


@pytest.mark.parametrize("src,line,col", [
    ("tb3", 1, 1),
    ("t1 +", 1, 5),
    ("(t1", 1, 4),
    ("t1 $ t2", 1, 4),
    ("t1\n  + )", 2, 5),
    ("exp t1", 1, 5),
])
def test_errors_carry_positions(src, line, col):
    with pytest.raises(ParseError) as info:
        parse(src, 2)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"line {line}, col {col}:")


def test_bosonic_token_in_fermionic_session():
    with pytest.raises(EvalError):
        ev("z t1", super=False)


def test_super_needs_one_mode():
    with pytest.raises(EvalError):
        ev("z t2", n=2)


def test_tokenize_end():
    assert tokenize("t1")[-1].kind == "END"


GENS = st.sampled_from(["t1", "tb1", "t2", "tb2"]).map(Gen)
NUMS = st.one_of(st.integers(0, 5).map(Num), st.sampled_from([0.5, 2.25, 1j, 3.5j]).map(Num))


def trees(ops=("+", "-", "*", "@", "@@")):
    return st.recursive(
        st.one_of(GENS, NUMS),
        lambda kids: st.one_of(
            st.builds(Neg, kids),
            st.builds(Exp, kids),
            st.builds(BinOp, st.sampled_from(ops), kids, kids),
        ),
        max_leaves=8,
    )


@given(trees())
def test_printer_round_trip(ast):
    again = parse(to_source(ast), 2)
    assert again == ast
    assert to_source(again) == to_source(ast)


@given(trees())
def test_printed_source_evaluates_identically(ast):
    config = EvalConfig(n=2, super=False)
    try:
        want = evaluate(ast, config)
    except EvalError:
        return
    assert evaluate(parse(to_source(ast), 2), config).isclose(want, atol=1e-9)
