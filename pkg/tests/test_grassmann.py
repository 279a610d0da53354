import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from grassmann_star import GrassmannElement as G
from grassmann_star.grassmann import (
    Parity,
    berezin_integrate,
    dumps,
    exp_nilpotent,
    from_json_dict,
    grade_involution,
    integrate_measure,
    involution,
    left_derivative,
    loads,
    multiply,
    parity_of,
    right_derivative,
    theta,
    theta_bar,
    to_json_dict,
)


def mono(n, tokens, c=1):
    return G.monomial(n, tokens, c)


def test_generator_squares_to_zero():
    assert multiply(G.gen(2, "t1"), G.gen(2, "t1")).is_zero()


def test_transposition_flips_sign():
    assert multiply(G.gen(2, "t2"), G.gen(2, "t1")) == mono(2, "t1 t2", -1)


def test_nilpotent_pair_cancels():
    q = mono(1, "tb1 t1")
    assert multiply(1 + q, 1 - q) == G.scalar(1)


def test_monomial_tokens_are_reordered_with_sign():
    assert mono(2, "t1 tb1") == mono(2, "tb1 t1", -1)
    assert mono(2, "t1 t1").is_zero()


def test_left_derivative():
    n = 1
    assert left_derivative(theta(1), G.gen(n, "t1")) == G.scalar(n)
    assert left_derivative(theta(1), G.scalar(n)).is_zero()
    assert left_derivative(theta(1), mono(n, "tb1 t1")) == -G.gen(n, "tb1")


def test_right_derivative():
    n = 1
    assert right_derivative(theta(1), G.gen(n, "t1")) == G.scalar(n)
    assert right_derivative(theta(1), mono(n, "tb1 t1")) == G.gen(n, "tb1")
    assert right_derivative(theta(1), G.scalar(n)).is_zero()


def test_berezin():
    n = 1
    iterated = lambda a: berezin_integrate(theta_bar(1), berezin_integrate(theta(1), a))  # noqa: E731
    assert iterated(mono(n, "t1 tb1")) == G.scalar(n)
    assert berezin_integrate(theta(1), G.scalar(n)).is_zero()
    assert iterated(G.scalar(n)).is_zero()
    assert integrate_measure(mono(n, "t1 tb1")) == G.scalar(n)


def test_involution_examples():
    assert involution(G.gen(1, "t1")) == G.gen(1, "tb1")
    assert involution(G.scalar(1, 2 + 3j)) == G.scalar(1, 2 - 3j)
    assert involution(mono(1, "tb1 t1")) == mono(1, "tb1 t1")


def test_exp_examples():
    q1, q2 = mono(2, "tb1 t1"), mono(2, "tb2 t2")
    assert exp_nilpotent(G.zero(1)) == G.scalar(1)
    assert exp_nilpotent(mono(1, "tb1 t1", -0.5)) == 1 - mono(1, "tb1 t1", 0.5)
    assert exp_nilpotent(q1 + q2) == 1 + q1 + q2 + multiply(q1, q2)


def test_exp_rejects_scalar_part():
    with pytest.raises(ValueError):
        exp_nilpotent(G.scalar(1, 0.3) + mono(1, "tb1 t1"))


def test_parity():
    assert parity_of(G.scalar(1)) is Parity.EVEN
    assert parity_of(G.gen(1, "t1")) is Parity.ODD
    assert parity_of(1 + G.gen(1, "t1")) is Parity.MIXED


def test_zero_modes():
    one = G.scalar(0, 2)
    assert multiply(one, one) == G.scalar(0, 4)
    assert involution(one) == one


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        multiply(G.gen(1, "t1"), G.gen(2, "t1"))


def test_bad_token_rejected():
    with pytest.raises(ValueError):
        G.monomial(1, "t2")
    with pytest.raises(ValueError):
        G.monomial(1, "x1")


@given(elements(2), elements(2), elements(2))
def test_associative(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(elements(2, parity=1), elements(2, parity=1))
def test_odd_elements_anticommute(a, b):
    assert multiply(a, b) == -multiply(b, a)


@given(elements(2, parity=0), elements(2))
def test_even_elements_are_central(a, b):
    assert multiply(a, b) == multiply(b, a)


@given(st.sampled_from(["t1", "tb1", "t2", "tb2"]), elements(2, parity=1), elements(2))
def test_graded_leibniz(g, a, b):
    d = lambda x: left_derivative(g, x)  # noqa: E731
    assert d(multiply(a, b)) == multiply(d(a), b) - multiply(a, d(b))


@given(st.sampled_from(["t1", "tb2"]), elements(2))
def test_integral_is_derivative(g, a):
    assert berezin_integrate(g, a) == left_derivative(g, a)


@given(elements(2), elements(2))
def test_involution_reverses_products(a, b):
    assert involution(multiply(a, b)) == multiply(involution(b), involution(a))


@given(elements(2))
def test_involution_is_an_involution(a):
    assert involution(involution(a)) == a


@given(elements(2))
def test_grade_involution_is_automorphism_sign(a):
    assert grade_involution(a) == a.even_part() - a.odd_part()


@given(elements(2, parity=0))
def test_exp_inverse(a):
    a = a - a.scalar_part
    assert multiply(exp_nilpotent(a), exp_nilpotent(-a)).isclose(G.scalar(2))


@given(elements(3))
def test_json_round_trip(a):
    assert loads(dumps(a)) == a
    assert from_json_dict(json.loads(json.dumps(to_json_dict(a)))) == a


@given(elements(2))
def test_vector_round_trip(a):
    assert G.from_vector(2, a.to_vector()) == a
