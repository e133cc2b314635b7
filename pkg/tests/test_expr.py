from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from gossamer import (Assumptions, FactorialDomainError, GossamerError, ParseError, Point,
                      differentiate, parse, substitute, to_string)
from gossamer.expr import add, contains_var, free_var, identifiers, to_infinity
from gossamer.numeric import evaluate


def P(text, params=()):
    return parse(text, var="x", params=params)


@pytest.mark.parametrize("text, normal", [
    ("x+x", "2*x"),
    ("x*x", "x^2"),
    ("x^2*x^3", "x^5"),
    ("(x+1)^2", "x^2 + 2*x + 1"),
    ("ln(exp(x))", "x"),
    ("exp(ln(x))", "x"),
    ("x/x", "1"),
    ("1/2+1/3", "5/6"),
    ("fact(3)", "6"),
    ("x-x", "0"),
    ("x^-1", "1/x"),
])
def test_normal_forms(text, normal):
    assert to_string(P(text)) == normal


def test_substitute_expands_to_normal_form():
    assert to_string(substitute(P("x^2"), P("x+2"))) == "x^2 + 4*x + 4"
    assert substitute(P("x^3 + ln(x)"), P("x")) == P("x^3 + ln(x)")


def test_shift_to_infinity_substitutes_reciprocal():
    (side, e), = to_infinity(P("x^2"), Point.parse("x=3+")[1])
    assert side == "plus"
    assert e == P("(3 + 1/x)^2")
    two = to_infinity(P("x"), Point.finite(0))
    assert [s for s, _ in two] == ["plus", "minus"]
    assert two[1][1] == P("-1/x")


@pytest.mark.parametrize("text, offset", [
    ("x+", 2), ("(x", 2), ("x**2", 2), ("ln()", 3), ("x $ 2", 2), ("", 0)])
def test_parse_errors_report_offset_and_expectation(text, offset):
    with pytest.raises(ParseError) as info:
        P(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_division_by_literal_zero_is_a_parse_error():
    with pytest.raises(ParseError):
        P("1/0")
    with pytest.raises(ParseError):
        P("x/(x-x)")


def test_factorial_outside_domain():
    with pytest.raises(FactorialDomainError):
        P("fact(-2)")


def test_two_undeclared_identifiers_need_a_declaration():
    with pytest.raises(ParseError):
        parse("a*x + b")
    e = parse("a*x + b", params=["a", "b"])
    assert free_var(e) == "x"
    assert identifiers("a*x + ln(b)") == ["a", "x", "b"]


def test_main_variable_is_the_single_free_identifier():
    assert free_var(parse("n^2 + 1")) == "n"
    assert not contains_var(parse("3 + 1/2"))


def test_points():
    assert Point.parse("x=inf") == ("x", Point.infinity())
    assert Point.parse("n=0-") == ("n", Point.zero_minus())
    assert Point.parse("x=1/2")[1] == Point.finite(Fraction(1, 2))
    assert str(Point.parse("v=2+")[1]) == "2+"
    with pytest.raises(ParseError):
        Point.parse("x")


def test_assumptions_reject_direct_contradictions():
    assert Assumptions.parse("a>0").param_sign("a").name == "POSITIVE"
    with pytest.raises(GossamerError):
        Assumptions.parse("a>0, a<0")


def test_derivative_examples():
    assert differentiate(P("x^3*ln(x)")) == P("3*x^2*ln(x) + x^2")
    assert differentiate(P("exp(x^2)")) == P("2*x*exp(x^2)")
    assert differentiate(P("a*x", ["a"])) == parse("a", var="x", params=["a"])


# -- generated expressions ------------------------------------------------------------------

ATOMS = ["x", "ln(x)", "exp(x/3)", "x^(1/2)", "a", "2", "1/3", "ln(ln(x+2))", "(x+1)"]


def _grow(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: "(%s) + (%s)" % t),
        st.tuples(children, children).map(lambda t: "(%s) * (%s)" % t),
        st.tuples(children, children).map(lambda t: "(%s) / (%s)" % t),
        children.map(lambda s: "ln(1 + %s)" % s),
        children.map(lambda s: "exp(%s/(%s + 5))" % (s, s)),
        st.tuples(children, st.sampled_from(["2", "3", "1/2", "-1"])).map(
            lambda t: "(%s)^(%s)" % t),
    )


# every generated expression is positive on (2, 10) with a = 3/2
positive_exprs = st.recursive(st.sampled_from(ATOMS), _grow, max_leaves=5)


def _parse(text):
    return parse(text, var="x", params=["a"])


@settings(max_examples=150, deadline=None)
@given(positive_exprs)
def test_print_parse_round_trip(text):
    e = _parse(text)
    assert _parse(to_string(e)) == e


@settings(max_examples=80, deadline=None)
@given(positive_exprs, positive_exprs)
def test_derivative_is_linear(f, g):
    F, G = _parse(f), _parse(g)
    assert differentiate(add(F, G)) == add(differentiate(F), differentiate(G))


@settings(max_examples=60, deadline=None)
@given(positive_exprs, st.lists(st.fractions(Fraction(21, 10), Fraction(99, 10)),
                                min_size=5, max_size=5))
def test_derivative_matches_central_differences(text, points):
    e = _parse(text)
    d = differentiate(e)
    params = {"a": Fraction(3, 2)}
    h = mpmath.mpf(10) ** -12
    with mpmath.workdps(60):
        for x0 in points:
            x = mpmath.mpf(x0.numerator) / x0.denominator
            fd = (evaluate(e, x + h, params) - evaluate(e, x - h, params)) / (2 * h)
            exact = evaluate(d, x, params)
            scale = max(abs(exact), mpmath.mpf(1))
            assert abs(fd - exact) / scale < 1e-6
