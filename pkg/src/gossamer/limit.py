"""Limits through expansion and the standard part, with L'Hopital as a fallback."""

import math
from dataclasses import dataclass
from fractions import Fraction

from .coeff import Coeff
from .errors import (AssumptionNeeded, DepthLimit, DivisionByExactZero, GossamerError,
                     NotIndeterminate, PrecisionExhausted, UndefinedAtPoint)
from .expr import (Assumptions, Expr, Point, contains_var, differentiate, div,
                   free_var, identifiers, parse, to_coeff, to_infinity)
from .gnum import expand_in, st, with_precision

__all__ = [
    "LimitResult", "shift_point", "limit", "limit_lhopital", "newton_sqrt2_demo",
    "sqrt2_digits",
]


@dataclass(frozen=True)
class LimitResult:
    """kind is one of value, +inf, -inf, mismatch, undetermined."""

    kind: str
    value: Coeff = None
    left: "LimitResult" = None
    right: "LimitResult" = None
    reason: str = ""

    @classmethod
    def Value(cls, c):
        return cls("value", value=c if isinstance(c, Coeff) else Coeff.const(c))

    @classmethod
    def PlusInfinity(cls):
        return cls("+inf")

    @classmethod
    def MinusInfinity(cls):
        return cls("-inf")

    @classmethod
    def TwoSidedMismatch(cls, left, right):
        return cls("mismatch", left=left, right=right)

    @classmethod
    def Undetermined(cls, reason):
        return cls("undetermined", reason=reason)

    @property
    def is_value(self):
        return self.kind == "value"

    @property
    def determined(self):
        return self.kind in ("value", "+inf", "-inf")

    def same(self, other):
        if self.kind != other.kind:
            return False
        if self.kind == "value":
            return (self.value - other.value).is_zero()
        return self.kind in ("+inf", "-inf")

    def __str__(self):
        if self.kind == "value":
            return str(self.value)
        if self.kind == "mismatch":
            return "left %s, right %s" % (self.left, self.right)
        if self.kind == "undetermined":
            return "undetermined: %s" % self.reason
        return self.kind


def _from_ext(v):
    if v.is_finite:
        return LimitResult.Value(v.value)
    return LimitResult.PlusInfinity() if v.kind == "+inf" else LimitResult.MinusInfinity()


def _coerce(e, point, var):
    if isinstance(point, str):
        var, point = Point.parse(point)
    point = point or Point.infinity()
    if not isinstance(e, Expr):
        names = set(identifiers(e)) - {var or "x"}
        e = parse(e, var=var or "x", params=tuple(names))
    return e, point, var or free_var(e) or "x"


def shift_point(e, p, var=None):
    """(expression at var -> +inf, shifted flag); one-sided or infinite points only."""
    var = var or free_var(e) or "x"
    if p.is_infinity:
        return e, False
    if p.side == "both":
        raise UndefinedAtPoint("shift_point needs a one-sided point; use each side")
    return to_infinity(e, p, var)[0][1], True


def _combine(results):
    if len(results) == 1:
        return results[0]
    left, right = results[1], results[0]
    if left.determined and right.determined and left.same(right):
        return right
    if not (left.determined and right.determined):
        return left if not left.determined else right
    return LimitResult.TwoSidedMismatch(left, right)


# A limit needs only the standard part, so start small and let the retry
# loop double the budget; symbolic coefficients grow quickly with the term count.
START_TERMS = 3


def _undetermined(exc):
    return LimitResult.Undetermined("%s: %s" % (type(exc).__name__, exc))


def limit(e, p=None, a=None, terms=None, var=None):
    """st of the expansion at p; both sides are checked at a two-sided point."""
    e, point, var = _coerce(e, p, var)
    a = a if isinstance(a, Assumptions) else Assumptions.parse(a)
    e = a.apply(e)
    terms = terms or START_TERMS
    out = []
    for _, s in to_infinity(e, point, var):
        try:
            v = with_precision(lambda ctx: st(expand_in(s, ctx)), a, terms, var=var,
                               point=point)
            out.append(_from_ext(v))
        except (PrecisionExhausted, AssumptionNeeded, DepthLimit, UndefinedAtPoint,
                DivisionByExactZero) as exc:
            out.append(_undetermined(exc))
    return _combine(out)


def limit_lhopital(f, g, p=None, a=None, max_rounds=12, terms=None, var=None):
    """Limit of f/g by differentiating numerator and denominator.

    Raises NotIndeterminate when f and g already have finite limits with
    st(g) nonzero.  The ratio is reported as soon as it is determinate.
    """
    f, point, var = _coerce(f, p, var)
    g, _, _ = _coerce(g, point, var)
    a = a if isinstance(a, Assumptions) else Assumptions.parse(a)
    f, g = a.apply(f), a.apply(g)
    terms = terms or START_TERMS
    sides = ["plus", "minus"] if (not point.is_infinity and point.side == "both") else [None]
    out = []
    for side in sides:
        pt = Point.finite(point.value, side) if side else point
        try:
            out.append(_lhopital_side(f, g, pt, a, max_rounds, terms, var))
        except NotIndeterminate:
            raise
        except GossamerError as exc:
            out.append(_undetermined(exc))
    return _combine(out)


def _lhopital_side(f, g, point, a, max_rounds, terms, var):
    def at(h):
        shifted = to_infinity(h, point, var)[0][1]
        return with_precision(lambda ctx: st(expand_in(shifted, ctx)), a, terms,
                              var=var, point=point)

    for rnd in range(max_rounds + 1):
        q = div(f, g)
        if not contains_var(q):
            return LimitResult.Value(to_coeff(q))
        lf, lg = at(f), at(g)
        zero = Coeff.const(0)
        f_zero = lf.is_finite and lf.value.is_zero()
        g_zero = lg.is_finite and lg.value.is_zero()
        if lf.is_finite and lg.is_finite and not g_zero:
            if rnd == 0:
                raise NotIndeterminate("limits %s and %s are already determinate" % (lf, lg))
            return LimitResult.Value(lf.value / lg.value)
        if lf.is_finite and not lg.is_finite:
            return LimitResult.Value(zero)
        if not lf.is_finite and lg.is_finite and not g_zero:
            pos = (lf.kind == "+inf") == (_to_sign(lg.value, a) > 0)
            return LimitResult.PlusInfinity() if pos else LimitResult.MinusInfinity()
        if not ((f_zero and g_zero) or (not lf.is_finite and not lg.is_finite)):
            return LimitResult.Undetermined("nonzero over zero: %s / %s" % (lf, lg))
        f, g = differentiate(f), differentiate(g)
    return LimitResult.Undetermined("RoundsExhausted after %d rounds" % max_rounds)


def _to_sign(c, a):
    from .coeff import Sign, sign_of
    s = sign_of(c, a)
    if s is Sign.POSITIVE:
        return 1
    if s is Sign.NEGATIVE:
        return -1
    raise AssumptionNeeded("sign of %s" % c)


def newton_sqrt2_demo(iterations):
    """x_{n+1} = x_n + (1/x_n - x_n/2) from 3/2, in exact rationals."""
    x = Fraction(3, 2)
    for _ in range(iterations):
        x = x + (1 / x - x / 2)
    return x


def sqrt2_digits(q, places=100):
    """Number of decimal places of q agreeing with sqrt(2) (up to ``places``).

    The reference digits come from the exact integer square root of 2*10^(2k).
    """
    ref = str(math.isqrt(2 * 10 ** (2 * places)))
    got = str(q.numerator * 10 ** places // q.denominator)
    n = 0
    for r, d in zip(ref[1:], got[1:]):
        if r != d:
            break
        n += 1
    if got[0] != ref[0]:
        return -1
    return n
