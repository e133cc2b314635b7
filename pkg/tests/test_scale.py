import itertools
from fractions import Fraction

import pytest

from corpus import lfunction, rng_for
from gossamer import ParseError, Point, compare, mrv, parse, standard_scale
from gossamer.expr import const, mul
from gossamer.relate import Relation
from gossamer.scale import Context, Family, ScaleBasis, extend_basis

INF = Point.infinity()


def X(text):
    return parse(text, var="x")


@pytest.mark.parametrize("family, depth, point, text", [
    ("powers", 3, INF, "x << x^2 << x^3"),
    ("powers", 3, Point.zero_plus(), "x >> x^2 >> x^3"),
    ("logs", 3, INF, "x >> ln(x) >> ln(ln(x))"),
    ("exponential-towers", 3, INF, "x << exp(x) << exp(exp(x))"),
])
def test_standard_scales(family, depth, point, text):
    assert standard_scale(family, depth, point).render() == text


def test_mixed_scale_is_increasing():
    sc = standard_scale(Family.MIXED, 7)
    assert len(sc.members) == 7
    assert set(sc.relations) == {Relation.MuchLess}


def test_scale_depth_must_be_positive():
    with pytest.raises(ValueError):
        standard_scale("powers", 0)


def test_mrv_picks_fastest_subexpressions():
    assert {str(n) for n in mrv(X("exp(x) + x^2"))} == {"exp(x)"}
    assert {str(n) for n in mrv(X("exp(exp(x))*exp(x) + ln(x)"))} == {"exp(exp(x))"}
    # an exp of a bounded argument never leads
    assert {str(n) for n in mrv(X("exp(1/x)*x"))} == {"x"}


def test_extend_basis_adds_every_needed_class():
    b = extend_basis(ScaleBasis([], INF), X("exp(x)*ln(ln(x)) + x"))
    assert b.render() == "ln(ln(x)) << ln(x) << x << exp(x)"
    again = extend_basis(b, X("x^2"))
    assert again.render() == b.render()


def _random_bases(n):
    rng = rng_for("bases")
    out = []
    while len(out) < n:
        try:
            b = extend_basis(ScaleBasis([], INF), X(lfunction(rng)))
        except ParseError:
            continue  # the generator can produce an exact zero denominator
        if len(b) >= 2:
            out.append(list(b)[:6])
    return out


BASES = _random_bases(40)


def test_basis_order_is_total_and_transitive():
    ctx = Context()
    for elems in BASES:
        for a, b in itertools.permutations(elems, 2):
            assert ctx.class_cmp(a, b) == -ctx.class_cmp(b, a) != 0
        for a, b, c in itertools.permutations(elems, 3):
            if ctx.class_cmp(a, b) < 0 and ctx.class_cmp(b, c) < 0:
                assert ctx.class_cmp(a, c) < 0


def test_adjacent_basis_elements_agree_with_compare():
    for elems in BASES:
        for lo, hi in zip(elems, elems[1:]):
            r = compare(X(lo.render("x")), X(hi.render("x")), INF)
            assert r.magnitude is Relation.MuchLess, (lo, hi)


@pytest.mark.parametrize("family", ["powers", "logs", "exponential-towers", "mixed"])
def test_scalar_multiples_keep_adjacent_relations(family):
    sc = standard_scale(family, 4)
    factors = [Fraction(3), Fraction(-1, 2), Fraction(7, 5), Fraction(-4)]
    for (a, b), rel, (c1, c2) in zip(zip(sc.members, sc.members[1:]), sc.relations,
                                     itertools.permutations(factors, 2)):
        r = compare(mul(const(c1), a), mul(const(c2), b), INF)
        assert r.magnitude is rel
