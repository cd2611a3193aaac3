import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addilog.errors import IrreducibilityFailure, ParseError, UnknownVariable
from addilog.fields import QQ, artin_schreier_field, function_field, prime_field, rational_function_field
from addilog.lie import angle, brace
from addilog.parsing import parse_curve, parse_expression, parse_field_descriptor, parse_generator, tokenize


@pytest.mark.parametrize("text", [
    "Q", "Q(a,b)", "Fp(3)", "Fp(3)[beta]", "ext(Q(b), u, u^2 - b)", "Fp(5)(y)", "ext(Q, u, u^2 - 2)(b)",
])
def test_descriptor_round_trip(text):
    F = parse_field_descriptor(text)
    assert F.descriptor() == text
    assert parse_field_descriptor(F.descriptor()) is F


def test_descriptor_examples():
    assert parse_field_descriptor("Q") is QQ
    assert parse_field_descriptor("Q(a,b)") is function_field(QQ, ["a", "b"])
    F = parse_field_descriptor("Fp(3)[beta]")
    assert F is artin_schreier_field(3) and F.degree == 3
    b = F.gen("beta")
    assert b ** 3 - b - 1 == 0
    assert parse_field_descriptor("Fp(7)") is prime_field(7)
    k = parse_field_descriptor("ext(Q(b), u, u^2-b)")
    u = k.gen("u")
    assert u * u == k(k.base.gen("b"))


def test_descriptor_errors():
    with pytest.raises(ParseError) as info:
        parse_field_descriptor("Fp(4)")
    assert info.value.position == 3
    with pytest.raises(IrreducibilityFailure):
        parse_field_descriptor("ext(Q, u, u^2-4)")
    with pytest.raises(ParseError):
        parse_field_descriptor("ext(Q, u, 2*u^2-1)")
    with pytest.raises(ParseError):
        parse_field_descriptor("Q(a,a)")
    with pytest.raises(ParseError):
        parse_field_descriptor("R")
    with pytest.raises(ParseError):
        parse_field_descriptor("Q(a) junk")


def test_expression_examples():
    K = function_field(QQ, ["a"])
    a = K.gen("a")
    F = rational_function_field(K, "t")
    t = F.gen("t")
    assert parse_expression("1 - a^2*t^2/4", K, "t") == 1 - a * a * t * t / 4
    assert parse_expression("a*(1-a)/(t-1)", K, "t") == a * (1 - a) / (t - 1)


def test_unbalanced_parenthesis_offset():
    with pytest.raises(ParseError) as info:
        parse_expression("(1+t", QQ, "t")
    assert info.value.position == 4


def test_unknown_variable():
    K = function_field(QQ, ["a"])
    with pytest.raises(UnknownVariable) as info:
        parse_expression("a + z", K)
    assert info.value.position == 4
    with pytest.raises(UnknownVariable):
        parse_expression("t", K)


def test_precedence():
    assert parse_expression("-2^2", QQ) == -4
    assert parse_expression("2*3^2", QQ) == 18
    assert parse_expression("1-2-3", QQ) == -4
    assert parse_expression("12/3/2", QQ) == 2
    assert parse_expression("-3*-2", QQ) == 6
    assert parse_expression("(1+2)^2", QQ) == 9
    assert parse_expression("1/2 + 1/3", QQ) == Fraction(5, 6)


def test_exponent_must_be_integer():
    K = function_field(QQ, ["a"])
    with pytest.raises(ParseError):
        parse_expression("2^a", K)
    with pytest.raises(ParseError):
        parse_expression("1/0", QQ)


def test_tokenize_positions():
    toks = tokenize("ab + 12")
    assert [(tok.kind, tok.pos) for tok in toks][:3] == [("name", 0), ("op", 3), ("int", 5)]


def test_finite_field_expression():
    F = artin_schreier_field(2)
    b = F.gen("beta")
    assert parse_expression("beta^2 + beta", F) == 1
    assert parse_expression("beta*y + 1", F, "y") == rational_function_field(F, "y").gen("y") * b + 1


def test_parse_curve():
    K = function_field(QQ, ["a"])
    x, y1, y2 = parse_curve("t; 1+t/2; 1-a^2*t^2/4", K)
    F = rational_function_field(K, "t")
    assert x == F.gen("t") and y1 == 1 + F.gen("t") / 2
    with pytest.raises(ParseError):
        parse_curve("t", K)
    with pytest.raises(ParseError) as info:
        parse_curve("t; (1", K)
    assert info.value.position == 5


def test_parse_generator():
    K = function_field(QQ, ["a"])
    a = K.gen("a")
    assert parse_generator("{a}_2", K) == brace(a, 2)
    assert parse_generator("<1-a>_3", K) == angle(1 - a, 3)
    with pytest.raises(ParseError):
        parse_generator("{a>_2", K)
    with pytest.raises(ParseError):
        parse_generator("a_2", K)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_print_parse_round_trip(seed):
    rng = random.Random(seed)
    fields = [
        (function_field(QQ, ["a", "b"]), None),
        (function_field(QQ, ["a"]), "t"),
        (artin_schreier_field(3), "y"),
        (prime_field(5), "y"),
        (parse_field_descriptor("ext(Q(b), u, u^2 - b)"), None),
    ]
    base, param = rng.choice(fields)
    F = rational_function_field(base, param) if param else base
    x = F.random_element(rng)
    text = F.format(x)
    assert parse_expression(text, base, param) == x
