"""Surface syntax: grammar, operator precedence, diagnostics, round-trips."""

import random

import pytest

from oagkit.errors import ParseError
from oagkit.formulas import (
    BOTTOM,
    TOP,
    And,
    Eq0,
    Exists,
    Forall,
    Implies,
    Lt0,
    Not,
    Or,
    PredAtom,
    alpha_equal,
)
from oagkit.parser import parse_formula
from oagkit.printer import print_formula
from oagkit.scalar import QuadScalar, Rational
from oagkit.terms import LinearTerm, Var

import gen

X, Y, Z = Var("x"), Var("y"), Var("z")


def term(*pairs, const=0):
    t = LinearTerm.of_const(const)
    for v, c in pairs:
        t = t + LinearTerm.of_var(v, Rational(c))
    return t


def test_atoms_normalize_to_two_kinds():
    assert parse_formula("x < 1") == Lt0(term((X, 1), const=-1))
    assert parse_formula("x = 1") == Eq0(term((X, 1), const=-1))
    assert parse_formula("x <= 1") == Not(Lt0(term((X, -1), const=1)))
    assert parse_formula("x >= 0") == Not(Lt0(term((X, 1))))
    assert parse_formula("x > -1") == Lt0(term((X, -1), const=-1))
    assert parse_formula("x != 1") == Not(Eq0(term((X, 1), const=-1)))


def test_constants_fold_and_sides_merge():
    assert parse_formula("x + -1 < 0") == parse_formula("x < 1")
    assert parse_formula("2*x + 1 < x + 3") == parse_formula("x < 2")
    f = parse_formula("1/2*x < 1/4")
    assert f == Lt0(LinearTerm.of_var(X, Rational(1, 2)) - LinearTerm.of_const(Rational(1, 4)))


def test_boolean_precedence():
    a, b, c = parse_formula("x < 0"), parse_formula("y < 0"), parse_formula("z < 0")
    assert parse_formula("x < 0 | y < 0 & z < 0") == Or((a, And((b, c))))
    assert parse_formula("(x < 0 | y < 0) & z < 0") == And((Or((a, b)), c))
    assert parse_formula("x < 0 -> y < 0 -> z < 0") == Implies(a, Implies(b, c))
    assert parse_formula("~(x < 0) & y < 0") == And((Not(a), b))


def test_quantifier_forms_and_scope():
    f = parse_formula("E x x < 0 | y < 0")
    assert isinstance(f, Exists) and isinstance(f.body, Or)
    assert parse_formula("exists x (x < 0)") == parse_formula("E x (x < 0)")
    assert parse_formula("forall y (y < 1)") == parse_formula("A y (y < 1)")
    g = parse_formula("A x x = y -> x < 1")
    assert isinstance(g, Forall) and isinstance(g.body, Implies)


def test_top_bottom_literals():
    assert parse_formula("true") == TOP
    assert parse_formula("false") == BOTTOM


def test_predicates_and_negation_alias():
    f = parse_formula("~C(x) & ~(x = 0)")
    assert f == And((Not(PredAtom("C", term((X, 1)))), Not(Eq0(term((X, 1))))))
    assert parse_formula("¬C(x)") == Not(PredAtom("C", term((X, 1))))


def test_sqrt_constants():
    f = parse_formula("x = sqrt(2)")
    assert f == Eq0(LinearTerm.of_var(X) - LinearTerm.of_const(QuadScalar(0, 1, 2)))
    g = parse_formula("x < 1/2 + 3*sqrt(2)")
    want = LinearTerm.of_var(X) - LinearTerm.of_const(
        QuadScalar(Rational(1, 2), Rational(3), 2)
    )
    assert g == Lt0(want)


def test_error_positions():
    with pytest.raises(ParseError, match=r"1:2"):
        parse_formula("x/2 < 1")
    with pytest.raises(ParseError, match=r"1:1"):
        parse_formula("!x < 1")
    with pytest.raises(ParseError):
        parse_formula("x <")
    with pytest.raises(ParseError):
        parse_formula("(x < 1")
    with pytest.raises(ParseError):
        parse_formula("x < 1 &")
    with pytest.raises(ParseError):
        parse_formula("")
    with pytest.raises(ParseError):
        parse_formula("x < 1 y < 2")
    # Quantifiers need a variable.
    with pytest.raises(ParseError):
        parse_formula("E (x < 1)")


def test_multiline_positions():
    try:
        parse_formula("x < 1 &\n y <")
    except ParseError as e:
        assert "2:" in str(e)
    else:
        pytest.fail("expected a parse error")


def test_round_trip_fixed_cases():
    cases = [
        "x < 1 | y = 2 & ~(z < 0)",
        "E u (u < x & x < u + 1)",
        "A u E w (u < w)",
        "D(3*x) -> C(x - 1/2)",
        "x <= 1 & x >= 0 | x != 1/3",
        "true -> false",
        "exists x forall y (x < y | y < x)",
    ]
    for s in cases:
        f = parse_formula(s)
        assert parse_formula(print_formula(f)) == f, s


def test_round_trip_random():
    rng = random.Random(41)
    for _ in range(300):
        f = gen.syntax_formula(rng)
        text = print_formula(f)
        g = parse_formula(text)
        assert alpha_equal(f, g), text
        # Printing is a fixpoint after one parse.
        assert print_formula(g) == text
