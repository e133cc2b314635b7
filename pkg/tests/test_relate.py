from fractions import Fraction

import pytest

from corpus import divergent, infinitesimal, lfunction, positive, rng_for
from gossamer import (ConditionViolated, Monotonicity, Order, ParseError, Point,
                      PrecisionExhausted, RelOp, Relation, UnsupportedRow, apply_rel_op,
                      compare, is_monotone_tail, logdom, parse, parse_chain, verify_chain,
                      weaken)
from gossamer.expr import const, differentiate, mul, neg
from gossamer.relate import RelContext, implies

R = Relation
INF = Point.infinity()


def X(text):
    return parse(text, var="x")


# -- the relation type ---------------------------------------------------------------------


def test_reversal_is_an_involution_with_the_stated_pairs():
    pairs = {R.MuchLess: R.MuchGreater, R.PrecEq: R.SuccEq, R.Less: R.Greater,
             R.LessEq: R.GreaterEq, R.LogMuchLess: R.LogMuchGreater}
    for a, b in pairs.items():
        assert a.reverse() is b and b.reverse() is a
    for fixed in (R.Propto, R.Sim, R.SimEq, R.Equal):
        assert fixed.reverse() is fixed
    assert all(r.reverse().reverse() is r for r in R)


@pytest.mark.parametrize("text, rel", [
    ("prec", R.MuchLess), ("<<", R.MuchLess), ("succ", R.MuchGreater), ("~", R.Sim),
    ("<=", R.LessEq), ("==", R.Equal), ("propto", R.Propto), ("≍", R.Propto)])
def test_relation_tokens(text, rel):
    assert R.from_token(text) is rel


def test_unknown_relation_token():
    with pytest.raises(ParseError):
        R.from_token("approx")


def test_implications():
    assert implies(R.MuchGreater, R.SuccEq)
    assert implies(R.Sim, R.Propto)
    assert not implies(R.Propto, R.Sim)
    assert not implies(R.MuchLess, R.MuchGreater)


# -- compare ---------------------------------------------------------------------------------


@pytest.mark.parametrize("f, g, assume, expected", [
    ("ln(x)", "x^a", "a>0", R.MuchLess),
    ("exp(x)", "x^D", "D>0", R.MuchGreater),
    ("3*x^2 + x", "x^2", None, R.Propto),
    ("x", "x + ln(x)", None, R.Propto),
    ("exp(x^2)", "exp(x)^100", None, R.MuchGreater),
    ("fact(x)", "x^x", None, R.MuchLess),
])
def test_compare_examples(f, g, assume, expected):
    assert compare(f, g, "x=inf", assume).magnitude is expected


def test_identical_sides():
    r = compare("x*ln(x)", "ln(x)*x", "x=inf")
    assert (r.magnitude, r.asymptotic, r.close, r.order) == (R.Propto, True, True, Order.Equal)


def test_flags_distinguish_sim_and_close():
    r = compare("x + 1", "x", "x=inf")
    assert r.asymptotic and not r.close and r.order is Order.Greater
    r = compare("x + 1/x", "x", "x=inf")
    assert r.asymptotic and r.close
    r = compare("2*x", "x", "x=inf")
    assert r.magnitude is R.Propto and not r.asymptotic


def test_landau_rendering():
    assert compare("ln(x)", "x", "x=inf").landau == "ln(x) = o(x)"
    assert compare("x^2", "x", "x=inf").landau == "x = o(x^2)"
    assert compare("x + 1", "x", "x=inf").landau == "x + 1 ~ x"
    assert compare("2*x", "x", "x=inf").landau == "2*x = Θ(x)"
    assert compare("ln(x)", "x", "x=inf").describe() == "ln(x) prec x   [ln(x) = o(x)]"


def test_finite_points():
    assert compare("v", "ln(v)", "v=0+").magnitude is R.MuchLess
    assert compare("x^2", "x", "x=0+").magnitude is R.MuchLess
    # two-sided: same magnitude on each side, order differs
    r = compare("x^3", "x^4", "x=0")
    assert r.magnitude is R.MuchGreater and r.order is Order.Unknown
    r = compare("x^3", "x^2", "x=0")
    assert r.magnitude is R.MuchLess and r.order is Order.Less


def test_logdom_examples():
    assert logdom("exp(n*ln(c))", "n", "n=inf", "c<1")
    assert not logdom("n^2", "n", "n=inf")
    assert not logdom("n", "n", "n=inf")


# -- properties over generated corpora ------------------------------------------------------


def _corpus(name, n, make):
    rng = rng_for(name)
    out = []
    while len(out) < n:
        try:
            out.append(tuple(X(t) for t in make(rng)))
        except ParseError:
            continue  # exact zero denominators from the generator
    return out


def test_trichotomy_on_random_lfunctions():
    declared, verdicts = 0, 0
    for f, g in _corpus("trichotomy", 200, lambda r: (lfunction(r), lfunction(r))):
        if g.kind == "const" and g.value == 0:
            continue
        try:
            res = compare(f, g, INF)
        except PrecisionExhausted:
            declared += 1
            continue
        holds = [res.holds(rel) for rel in (R.MuchLess, R.Propto, R.MuchGreater)]
        assert holds.count(True) == 1
        if res.asymptotic:
            assert res.magnitude is R.Propto
        verdicts += 1
    assert verdicts >= 150, (verdicts, declared)


def test_reversal_matches_swapped_compare():
    for f, g in _corpus("reverse", 60, lambda r: (positive(r), positive(r))):
        a, b = compare(f, g, INF), compare(g, f, INF)
        assert b.magnitude is a.magnitude.reverse()
        assert b.order is a.reversed().order
        assert (a.asymptotic, a.close) == (b.asymptotic, b.close)


def test_scalar_and_sign_invariance():
    rng = rng_for("scalars")
    for f, g in _corpus("scalar-pairs", 60, lambda r: (positive(r), positive(r))):
        base = compare(f, g, INF).magnitude
        a1, a2 = (Fraction(rng.randrange(1, 20), rng.randrange(1, 7)) for _ in range(2))
        assert compare(mul(const(a1), f), mul(const(a2), g), INF).magnitude is base
        assert compare(neg(f), g, INF).magnitude is base


def test_lhopital_form_of_comparison():
    checked = 0
    for f, g in _corpus("lhopital-cmp", 60, lambda r: (divergent(r), divergent(r))):
        try:
            df = compare(differentiate(f), differentiate(g), INF)
        except PrecisionExhausted:
            continue
        assert compare(f, g, INF).magnitude is df.magnitude
        checked += 1
    for f, g in _corpus("lhopital-cmp-0", 40, lambda r: (infinitesimal(r), infinitesimal(r))):
        assert compare(f, g, INF).magnitude is \
            compare(differentiate(f), differentiate(g), INF).magnitude
    assert checked >= 50


# -- relation table ---------------------------------------------------------------------------


def _ctx(f, g):
    return RelContext(X(f), X(g), INF)


@pytest.mark.parametrize("rel, op, f, g, out", [
    (R.Greater, RelOp.ApplyExp, "3*x", "2*x", R.MuchGreater),
    (R.Greater, RelOp.ApplyExp, "x + 1", "x", R.Greater),
    (R.Greater, RelOp.ApplyLn, "3*x", "2*x", R.Greater),
    (R.MuchGreater, RelOp.Differentiate, "x^2", "x", R.MuchGreater),
    (R.MuchGreater, RelOp.ApplyLn, "exp(x)", "x", R.MuchGreater),
    (R.MuchGreater, RelOp.ApplyLn, "x^2", "x", R.Greater),
    (R.Equal, RelOp.Negate, "x", "x", R.Equal),
    (R.Less, RelOp.scalar_mul(Fraction(-2)), "x", "x^2", R.Greater),
    (R.MuchGreater, RelOp.Reciprocal, "x^2", "x", R.MuchLess),
    (R.MuchLess, RelOp.Integrate, "1/x", "x", R.MuchLess),
])
def test_table_rows(rel, op, f, g, out):
    assert apply_rel_op(rel, op, _ctx(f, g)) is out


def test_side_conditions_are_named_when_they_fail():
    with pytest.raises(ConditionViolated) as info:
        apply_rel_op(R.Less, RelOp.Differentiate, _ctx("x", "x + 1/x"))
    assert info.value.condition
    with pytest.raises(ConditionViolated):
        apply_rel_op(R.MuchGreater, RelOp.add_both(X("-x^2")), _ctx("x^2", "x^3"))


def test_unsupported_rows():
    with pytest.raises(UnsupportedRow):
        apply_rel_op(R.Sim, RelOp.Differentiate, _ctx("x + 1", "x"))


def test_weakening():
    assert weaken(R.MuchGreater, R.Greater, _ctx("x^2", "x")) is R.Greater
    assert weaken(R.MuchGreater, R.SuccEq) is R.SuccEq
    with pytest.raises(ConditionViolated):
        weaken(R.MuchGreater, R.Greater, _ctx("-x^2", "x"))
    with pytest.raises(UnsupportedRow):
        weaken(R.MuchLess, R.MuchGreater, _ctx("x", "x^2"))


# -- chains -----------------------------------------------------------------------------------


def test_empty_chain_is_ok():
    assert verify_chain("").ok
    assert verify_chain("# only a comment\n").ok


def test_exp_versus_power_chain():
    text = """
    assume: D>0
    exp(x) ; z ; x^D ; at x=inf ; by given
    x ; z ; D*ln(x) ; by ln
    x ; succ ; D*ln(x) ; by solve
    exp(x) ; succ ; x^D ; by exp
    """
    report = verify_chain(text)
    assert report.ok, report.render()
    assert report.render().endswith("chain OK")


def test_wrong_relation_in_a_step_is_reported():
    text = """
    x^2 ; succ ; x ; at x=inf ; by solve
    2*x ; prec ; 1 ; by D
    """
    report = verify_chain(text)
    assert [s.ok for s in report.steps] == [True, False]


def test_malformed_lines_become_step_failures():
    report = verify_chain("x ; succ\nx ; succ ; 1 ; at x=inf ; by solve")
    assert not report.steps[0].ok
    assert report.steps[1].ok


def test_parse_chain_reads_points_and_operations():
    chain = parse_chain("x ; z ; ln(x) ; at x=inf ; by given\n1 ; z ; 1/x ; by D")
    assert len(chain.steps) == 2
    assert chain.steps[1].point == INF
    assert chain.steps[1].justification == RelOp.Differentiate


# -- monotone tails ----------------------------------------------------------------------------


@pytest.mark.parametrize("term, verdict", [
    ("1/n^2", Monotonicity.Decreasing),
    ("n^2", Monotonicity.Increasing),
    ("3", Monotonicity.Constant),
    ("n - ln(n)", Monotonicity.Increasing),
    ("fact(n)/n^n", Monotonicity.Decreasing),
])
def test_monotone_tail(term, verdict):
    assert is_monotone_tail(term, var="n") is verdict
