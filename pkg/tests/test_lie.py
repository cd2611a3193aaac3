import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addilog.bloch import cathelineau
from addilog.errors import DegenerateArgument, NotWeightTwo
from addilog.fields import QQ, function_field
from addilog.lie import (
    ExteriorExpression,
    angle,
    brace,
    d_squared_zero,
    evaluate_weight2,
    extend_derivation,
    lie_boundary,
)
from addilog.tensor import TensorElement, epsilon

W = ExteriorExpression.word


@pytest.fixture(scope="module")
def a():
    return function_field(QQ, ["a"]).gen("a")


def test_boundary_examples(a):
    assert lie_boundary(brace(a, 1)).is_zero()
    assert lie_boundary(brace(a, 2)) == W(brace(a, 1), brace(1 - a, 1))
    assert lie_boundary(angle(a, 2)) == W(angle(a, 1), brace(1 - a, 1)) + W(angle(1 - a, 1), brace(a, 1))


def test_derivation_examples(a):
    g, h = brace(a, 1), angle(a, 1)
    assert extend_derivation(W(g, h)).is_zero()
    got = extend_derivation(W(angle(a, 2), brace(1 - a, 1)))
    assert got == W(angle(1 - a, 1), brace(a, 1), brace(1 - a, 1))


def test_wedge_sign_rules(a):
    g, h = brace(a, 1), angle(a, 1)
    assert W(g, h) == -W(h, g)
    assert W(g, g).is_zero()


def test_d_squared_examples(a):
    assert d_squared_zero(QQ(2), 3)
    assert d_squared_zero(a, 5)
    assert d_squared_zero(a, 1)


@pytest.mark.parametrize("arg", ["a", "1/a", "a/(a+1)", "2", "-1/3", "1-a"])
@pytest.mark.parametrize("n", range(1, 7))
def test_d_squared_grid(arg, n):
    from addilog.parsing import parse_expression

    K = function_field(QQ, ["a"])
    assert d_squared_zero(parse_expression(arg, K), n)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_boundary_linear_and_weight_preserving(seed):
    rng = random.Random(seed)
    args = [QQ(x) for x in (2, 3, Fraction(1, 2), -1, Fraction(5, 7))]
    gens = [rng.choice([brace, angle])(rng.choice(args), rng.randint(1, 5)) for _ in range(6)]
    e1 = ExteriorExpression({(gens[0], gens[1]): 2, (gens[2],): -1})
    e2 = ExteriorExpression({(gens[3], gens[4], gens[5]): Fraction(1, 3)})
    assert extend_derivation(e1 + e2) == extend_derivation(e1) + extend_derivation(e2)
    assert extend_derivation(3 * e1) == 3 * extend_derivation(e1)
    for e in (e1, e2):
        d = extend_derivation(e)
        if not d.is_zero():
            assert d.weights() <= e.weights()
    # d∘d kills arbitrary expressions, not only generators
    assert extend_derivation(extend_derivation(e1 + e2)).is_zero()


def test_degenerate_generators():
    for bad in (0, 1):
        with pytest.raises(DegenerateArgument):
            brace(QQ(bad), 2)


def test_weight2_examples(a):
    K = a.field
    assert evaluate_weight2(lie_boundary(angle(a, 2)), K) == epsilon(a, K)
    assert evaluate_weight2(W(angle(a, 1), brace(1 - a, 1)), K) == TensorElement.from_terms(K, [(a, a)])
    assert evaluate_weight2(ExteriorExpression(), K).is_zero()
    with pytest.raises(NotWeightTwo):
        evaluate_weight2(lie_boundary(brace(a, 2)), K)


def test_weight2_factor_two_against_bloch(a):
    K = a.field
    lie_value = evaluate_weight2(lie_boundary(angle(a, 2)), K)
    assert cathelineau(a).tame == lie_value.scale(2)


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=20).filter(lambda x: x not in (0, 1)))
def test_weight2_random(x):
    assert evaluate_weight2(lie_boundary(angle(QQ(x), 2)), QQ) == epsilon(QQ(x), QQ)
