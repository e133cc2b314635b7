"""Relations between functions at a point.

:func:`compare` solves ``f z g`` for the unknown relation ``z``: the
magnitude class of f/g (much less, proportional, much greater), whether the
ratio tends to 1, whether the difference is infinitesimal, and the sign of
f - g.  :func:`apply_rel_op` pushes a known relation through an operation
applied to both sides, checking the side conditions with the engine, and
:func:`verify_chain` replays a whole written derivation.
"""

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import Coeff, Sign
from .errors import (AssumptionNeeded, ConditionViolated, DepthLimit,
                     DivisionByExactZero, GossamerError, NeedMorePrecision, ParseError,
                     PrecisionExhausted, UndefinedAtPoint, UnsupportedRow)
from .expr import (Assumptions, Expr, Point, ZERO, const, contains_var, differentiate,
                   div, free_var, identifiers, ln, mul, neg, parse, sub,
                   to_infinity, to_string, add, exp)
from .gnum import components, expand_in, st, with_precision

__all__ = [
    "Relation", "Order", "Monotonicity", "RelationResult", "RelOp", "RelContext",
    "compare", "logdom", "apply_rel_op", "weaken", "implies",
    "ChainStep", "Chain", "StepReport", "ChainReport", "parse_chain",
    "verify_chain", "is_monotone_tail",
]


class Relation(enum.Enum):
    MuchLess = ("prec", "≺")
    PrecEq = ("preceq", "⪯")
    Propto = ("propto", "∝")
    Sim = ("sim", "∼")
    SimEq = ("simeq", "≃")
    SuccEq = ("succeq", "⪰")
    MuchGreater = ("succ", "≻")
    Less = ("lt", "<")
    LessEq = ("le", "≤")
    Equal = ("eq", "==")
    GreaterEq = ("ge", "≥")
    Greater = ("gt", ">")
    LogMuchLess = ("logll", "≺≺")
    LogMuchGreater = ("loggg", "≻≻")

    @property
    def token(self):
        return self.value[0]

    @property
    def symbol(self):
        return self.value[1]

    def reverse(self):
        return _REVERSE.get(self, self)

    @property
    def is_order(self):
        return self in _ORDER_RELS

    @property
    def is_magnitude(self):
        return self in _MAGNITUDE_RELS

    @classmethod
    def from_token(cls, text):
        text = text.strip()
        hit = _BY_TOKEN.get(text)
        if hit is None:
            raise ParseError("unknown relation %r" % text, 0, tuple(r.token for r in cls))
        return hit

    def __str__(self):
        return self.token


R = Relation
_REVERSE = {
    R.MuchLess: R.MuchGreater, R.MuchGreater: R.MuchLess,
    R.PrecEq: R.SuccEq, R.SuccEq: R.PrecEq,
    R.Less: R.Greater, R.Greater: R.Less,
    R.LessEq: R.GreaterEq, R.GreaterEq: R.LessEq,
    R.LogMuchLess: R.LogMuchGreater, R.LogMuchGreater: R.LogMuchLess,
}
_ORDER_RELS = {R.Less, R.LessEq, R.Equal, R.GreaterEq, R.Greater}
_MAGNITUDE_RELS = {R.MuchLess, R.PrecEq, R.Propto, R.Sim, R.SuccEq, R.MuchGreater}
_BY_TOKEN = {}
for _r in Relation:
    _BY_TOKEN[_r.token] = _r
    _BY_TOKEN[_r.symbol] = _r
_BY_TOKEN.update({"<": R.Less, "<=": R.LessEq, "=": R.Equal, ">=": R.GreaterEq,
                  ">": R.Greater, "<<": R.MuchLess, ">>": R.MuchGreater,
                  "~": R.Sim, "≍": R.Propto})


class Order(enum.Enum):
    Less = "lt"
    Greater = "gt"
    Equal = "eq"
    Unknown = "unknown"

    def reverse(self):
        return {Order.Less: Order.Greater, Order.Greater: Order.Less}.get(self, self)


class Monotonicity(enum.Enum):
    Increasing = "increasing"
    Decreasing = "decreasing"
    Constant = "constant"


# Relations implied by another without any side condition.
_IMPLIED = {
    R.MuchLess: {R.PrecEq},
    R.MuchGreater: {R.SuccEq},
    R.Sim: {R.Propto, R.PrecEq, R.SuccEq},
    R.Propto: {R.PrecEq, R.SuccEq},
    R.Less: {R.LessEq},
    R.Greater: {R.GreaterEq},
    R.Equal: {R.LessEq, R.GreaterEq, R.SimEq},
}


def implies(a, b):
    """a => b for every pair of functions (static, no engine calls)."""
    return a is b or b in _IMPLIED.get(a, ())


# -- compare ---------------------------------------------------------------------


@dataclass
class RelationResult:
    magnitude: Relation
    asymptotic: bool
    close: bool
    order: Order
    f: Expr = None
    g: Expr = None
    point: Point = None
    assumptions: Assumptions = None
    method: str = "ratio"
    _logdom: dict = field(default_factory=dict, repr=False)

    @property
    def relation(self):
        """The sharpest magnitude verdict: prec, succ, sim or propto."""
        return R.Sim if self.asymptotic else self.magnitude

    @property
    def landau(self):
        fs, gs = to_string(self.f), to_string(self.g)
        if self.magnitude is R.MuchLess:
            return "%s = o(%s)" % (fs, gs)
        if self.magnitude is R.MuchGreater:
            return "%s = o(%s)" % (gs, fs)
        if self.asymptotic:
            return "%s ~ %s" % (fs, gs)
        return "%s = Θ(%s)" % (fs, gs)

    def holds(self, rel):
        """Whether ``f rel g``; None when the engine cannot tell."""
        m, o = self.magnitude, self.order
        if rel is R.MuchLess:
            return m is R.MuchLess
        if rel is R.MuchGreater:
            return m is R.MuchGreater
        if rel is R.Propto:
            return m is R.Propto
        if rel is R.PrecEq:
            return m in (R.MuchLess, R.Propto)
        if rel is R.SuccEq:
            return m in (R.MuchGreater, R.Propto)
        if rel is R.Sim:
            return self.asymptotic
        if rel is R.SimEq:
            return self.close
        if rel in (R.LogMuchLess, R.LogMuchGreater):
            a, b = (self.f, self.g) if rel is R.LogMuchGreater else (self.g, self.f)
            if rel not in self._logdom:
                self._logdom[rel] = logdom(a, b, self.point, self.assumptions)
            return self._logdom[rel]
        if o is Order.Unknown:
            return None
        allowed = {
            R.Less: (Order.Less,), R.Greater: (Order.Greater,), R.Equal: (Order.Equal,),
            R.LessEq: (Order.Less, Order.Equal), R.GreaterEq: (Order.Greater, Order.Equal),
        }[rel]
        return o in allowed

    def reversed(self):
        return RelationResult(self.magnitude.reverse(), self.asymptotic, self.close,
                              self.order.reverse(), self.g, self.f,
                              self.point, self.assumptions, self.method)

    def describe(self, unicode=False):
        tok = self.relation.symbol if unicode else self.relation.token
        return "%s %s %s   [%s]" % (to_string(self.f), tok, to_string(self.g), self.landau)


def _as_point(p, var):
    if p is None:
        return var, Point.infinity()
    if isinstance(p, str):
        return Point.parse(p)
    return var, p


def _as_expr(e, var, params=()):
    if isinstance(e, Expr):
        return e
    if isinstance(e, (int, Fraction)):
        from .expr import const
        return const(e)
    names = set(identifiers(e)) - {var}
    return parse(e, var=var, params=tuple(names) + tuple(params))


def _prepare(f, g, p, a, var):
    """Coerce inputs; returns (f, g, var, point, assumptions)."""
    if var is None:
        if isinstance(p, str):
            var = Point.parse(p)[0]
        else:
            var = next((v for v in (free_var(x) for x in (f, g) if isinstance(x, Expr)) if v),
                       "x")
    var, point = _as_point(p, var)
    a = Assumptions.parse(a) if not isinstance(a, Assumptions) else a
    f, g = _as_expr(f, var), _as_expr(g, var)
    fv = {free_var(f), free_var(g)} - {None}
    if len(fv) > 1:
        raise ParseError("both sides must use the same variable", 0, (var,))
    if fv:
        var = fv.pop()
    return f, g, var, point, a


def _result(mag, asym, close, order, method):
    return {"magnitude": mag, "asymptotic": asym, "close": close, "order": order,
            "method": method}


def _strict(ctx, c, what):
    """Sign of a leading coefficient as an Order; unresolved signs block."""
    s = ctx.strict_sign(c, "%s > 0, = 0 or < 0 (%s)" % (c, what))
    return {1: Order.Greater, -1: Order.Less, 0: Order.Equal}[s]


def _small(x):
    """x tends to 0 (or is 0)."""
    if x.is_exact_zero():
        return True
    return x.ctx.growth(x.lead()[1]) < 0


def _to_minus_inf(x):
    if x.is_exact_zero():
        return False
    c, m = x.lead()
    return x.ctx.growth(m) > 0 and x.ctx.sign(c) is Sign.NEGATIVE


def _verdict(ctx, rc, rm, D, method):
    """Result from the lead of f/g and the expansion of f - g."""
    _strict(ctx, rc, "leading coefficient of f/g")
    gr = ctx.growth(rm)
    mag = R.MuchLess if gr < 0 else R.MuchGreater if gr > 0 else R.Propto
    asym = gr == 0 and _strict(ctx, rc - Coeff.const(1),
                               "leading coefficient of f/g minus 1") is Order.Equal
    if D.is_exact_zero():
        return _result(mag, asym, True, Order.Equal, method)
    dc, dm = D.lead()
    order = _strict(ctx, dc, "leading coefficient of f - g")
    return _result(mag, asym, ctx.growth(dm) < 0, order, method)


def _by_ratio(F, G, ctx):
    if G.is_exact_zero():
        c, _ = F.lead()
        return _result(R.MuchGreater, False, _small(F), _strict(ctx, c, "sign of f"), "ratio")
    if F.is_exact_zero():
        c, _ = G.lead()
        return _result(R.MuchLess, False, _small(G),
                       _strict(ctx, c, "sign of g").reverse(), "ratio")
    rc, rm = (F * G.inv()).lead()
    return _verdict(ctx, rc, rm, F - G, "ratio")


def _by_logs(fs, gs, ctx):
    """Verdict from H = ln f - ln g; f and g must be positive."""
    LF = expand_in(ln(fs), ctx)
    LG = expand_in(ln(gs), ctx)
    H = LF - LG
    if H.is_exact_zero():
        return _result(R.Propto, True, True, Order.Equal, "log")
    c, m = H.lead()
    if ctx.growth(m) > 0:
        s = ctx.strict_sign(c, "%s > 0 or %s < 0 (leading coefficient of ln f - ln g)" % (c, c))
        if s > 0:
            return _result(R.MuchGreater, False, _to_minus_inf(LF), Order.Greater, "log")
        return _result(R.MuchLess, False, _to_minus_inf(LG), Order.Less, "log")
    comp = components(H)
    if comp.inf.err is not None:
        raise NeedMorePrecision("ln f - ln g hidden behind truncation")
    asym = comp.real.is_zero()
    order = _strict(ctx, c, "leading coefficient of ln f - ln g")
    if not asym:
        return _result(R.Propto, False, _to_minus_inf(LG), order, "log")
    habs = H if ctx.sign(c) is Sign.POSITIVE else -H
    S = LG + habs.ln()
    return _result(R.Propto, True, _to_minus_inf(S), order, "log")


def _by_quotient(fs, gs, ctx):
    """Verdict from the quotient expression f/g, simplified before expansion.

    Catches pairs that share a factor the normal form can cancel, where the
    separate expansions of f and g would hide f - g behind truncation.
    """
    q = div(fs, gs)
    Q = expand_in(q, ctx)
    G = expand_in(gs, ctx)
    if Q.is_exact_zero():
        return _result(R.MuchLess, False, _small(G),
                       _strict(ctx, G.lead()[0], "sign of g").reverse(), "quotient")
    rc, rm = Q.lead()
    Q1 = expand_in(sub(q, ONE_EXPR), ctx)
    # f - g = g*(f/g - 1); the lead of a product needs no cancellation
    D = Q1 if Q1.is_exact_zero() else G * Q1
    return _verdict(ctx, rc, rm, D, "quotient")


ONE_EXPR = const(1)


def _positive_syntactic(e, a):
    """Positivity of an expression whose variable tends to +infinity."""
    k = e.kind
    if k == "const":
        return e.value > 0
    if k == "param":
        return a.param_sign(e.name) is Sign.POSITIVE
    if k in ("var", "exp", "fact"):
        return True
    if k in ("add", "mul", "div"):
        return all(_positive_syntactic(x, a) for x in e.args)
    if k == "ln":
        u = e.arg
        return u.kind == "var" or (u.kind == "ln" and _positive_syntactic(u, a)
                                  and u.arg.kind in ("var", "ln"))
    return False


def _positive(e, a, var, point, terms):
    if _positive_syntactic(e, a):
        return True
    try:
        x = with_precision(lambda ctx: expand_in(e, ctx), a, terms, var=var, point=point)
        return not x.is_exact_zero() and x.ctx.sign(x.lead()[0]) is Sign.POSITIVE
    except GossamerError:
        return False


def _compare_side(fs, gs, a, terms, var, point):
    def ratio(ctx):
        try:
            return _by_ratio(expand_in(fs, ctx), expand_in(gs, ctx), ctx)
        except NeedMorePrecision:
            # same budget, but let the normal form cancel shared factors first
            try:
                return _by_quotient(fs, gs, ctx)
            except (NeedMorePrecision, DivisionByExactZero):
                pass
            raise

    try:
        return with_precision(ratio, a, terms, var=var, point=point)
    except (PrecisionExhausted, DepthLimit, AssumptionNeeded) as exc:
        first = exc
    if not (_positive(fs, a, var, point, terms) and _positive(gs, a, var, point, terms)):
        raise first
    try:
        return with_precision(lambda ctx: _by_logs(fs, gs, ctx), a, terms, var=var, point=point)
    except GossamerError:
        raise first


def compare(f, g, p=None, a=None, terms=None, var=None):
    """Solve ``f z g`` at the point p under assumptions a.

    Strings are parsed with the point's variable as main variable and every
    other identifier as a parameter.
    """
    f, g, var, point, a = _prepare(f, g, p, a, var)
    fa, ga = a.apply(f), a.apply(g)
    base = dict(f=f, g=g, point=point, assumptions=a)
    if fa == ga or sub(fa, ga) == ZERO:
        return RelationResult(R.Propto, True, True, Order.Equal, method="identity", **base)
    fsides = to_infinity(fa, point, var)
    gsides = to_infinity(ga, point, var)
    verdicts = [_compare_side(fs, gs, a, terms, var, point)
                for (_, fs), (_, gs) in zip(fsides, gsides)]
    first = dict(verdicts[0])
    for v in verdicts[1:]:
        if any(v[k] != first[k] for k in ("magnitude", "asymptotic", "close")):
            raise UndefinedAtPoint("left and right approaches to %s give different relations"
                                   % point)
        if v["order"] is not first["order"]:
            # same magnitude from both sides, but f - g changes sign at the point
            first["order"] = Order.Unknown
    return RelationResult(**first, **base)


def logdom(f, g, p=None, a=None, terms=None, var=None):
    """f log-dominates g: ln f is much greater than ln g."""
    f, g, var, point, a = _prepare(f, g, p, a, var)
    if f == g:
        return False
    return compare(ln(f), ln(g), point, a, terms, var).magnitude is R.MuchGreater


# -- engine helpers for side conditions ---------------------------------------------


@dataclass
class RelContext:
    f: Expr
    g: Expr
    p: Point = None
    a: Assumptions = None
    new_f: Expr = None
    new_g: Expr = None
    terms: int = None

    def __post_init__(self):
        self.p = self.p or Point.infinity()
        if not isinstance(self.a, Assumptions):
            self.a = Assumptions.parse(self.a)
        self.var = free_var(self.f) or free_var(self.g) or "x"


def _sides(h, ctx, fn):
    """fn(GNum) on every approach side of the point."""
    h = ctx.a.apply(h)
    out = []
    for _, s in to_infinity(h, ctx.p, ctx.var):
        out.append(with_precision(lambda c: fn(expand_in(s, c)), ctx.a, ctx.terms,
                                  var=ctx.var, point=ctx.p))
    return out


def _limit_kinds(h, ctx):
    return [str(v) if not v.is_finite else "finite" for v in _sides(h, ctx, st)]


def _diverges_up(h, ctx):
    return all(k == "+inf" for k in _limit_kinds(h, ctx))


def _diverges_down(h, ctx):
    return all(k == "-inf" for k in _limit_kinds(h, ctx))


def _bounded(h, ctx):
    return all(k == "finite" for k in _limit_kinds(h, ctx))


def _unbounded(h, ctx):
    return all(k != "finite" for k in _limit_kinds(h, ctx))


def _lead_sign(x):
    if x.is_exact_zero():
        return Sign.ZERO
    return x.ctx.sign(x.lead()[0])


def _signs(h, ctx):
    return _sides(h, ctx, _lead_sign)


def _all_positive(h, ctx):
    return all(s is Sign.POSITIVE for s in _signs(h, ctx))


def _all_negative(h, ctx):
    return all(s is Sign.NEGATIVE for s in _signs(h, ctx))


def _is_constant(h, ctx):
    if not contains_var(h):
        return True

    def const_series(x):
        return x.err is None and all(m.is_one for _, m in x.terms)

    try:
        return all(_sides(h, ctx, const_series))
    except PrecisionExhausted:
        return False


def _pos_infinitesimal(h, ctx):
    def check(x):
        return (not x.is_exact_zero() and x.ctx.growth(x.lead()[1]) < 0
                and x.ctx.sign(x.lead()[0]) is Sign.POSITIVE)

    return all(_sides(h, ctx, check))


def _engine(ctx, f, g):
    return compare(f, g, ctx.p, ctx.a, ctx.terms, ctx.var)


# -- relation operators ----------------------------------------------------------------


@dataclass(frozen=True)
class RelOp:
    """An operation applied to both sides of a relation."""

    kind: str
    arg: object = None

    TOKENS = {"ApplyExp": "exp", "ApplyLn": "ln", "Differentiate": "D",
              "Integrate": "int", "ScalarMul": "mul", "AddBoth": "add",
              "Reciprocal": "recip", "Negate": "neg"}

    def __post_init__(self):
        if self.kind not in self.TOKENS:
            raise ValueError("unknown relation operator %r" % self.kind)

    @classmethod
    def scalar_mul(cls, c):
        return cls("ScalarMul", c if isinstance(c, Expr) else Fraction(c))

    @classmethod
    def add_both(cls, lam):
        return cls("AddBoth", lam)

    def apply(self, e):
        """The operation on one side (Integrate has no symbolic form)."""
        k = self.kind
        if k == "ApplyExp":
            return exp(e)
        if k == "ApplyLn":
            return ln(e)
        if k == "Differentiate":
            return differentiate(e)
        if k == "ScalarMul":
            from .expr import const
            c = self.arg if isinstance(self.arg, Expr) else const(self.arg)
            return mul(c, e)
        if k == "AddBoth":
            return add(e, self.arg)
        if k == "Reciprocal":
            from .expr import ONE
            return div(ONE, e)
        if k == "Negate":
            return neg(e)
        raise UnsupportedRow("integration is a relation transform only")

    def __str__(self):
        tok = self.TOKENS[self.kind]
        if self.kind in ("ScalarMul", "AddBoth"):
            arg = self.arg if isinstance(self.arg, Expr) else _frac_str(self.arg)
            return "%s(%s)" % (tok, arg)
        return tok


def _frac_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


RelOp.ApplyExp = RelOp("ApplyExp")
RelOp.ApplyLn = RelOp("ApplyLn")
RelOp.Differentiate = RelOp("Differentiate")
RelOp.Integrate = RelOp("Integrate")
RelOp.Reciprocal = RelOp("Reciprocal")
RelOp.Negate = RelOp("Negate")

_FLIP_ORDER = {R.Less: R.Greater, R.Greater: R.Less, R.LessEq: R.GreaterEq,
               R.GreaterEq: R.LessEq, R.Equal: R.Equal}


def _unsupported(rel, op):
    raise UnsupportedRow("no table row for %s under %s" % (rel.token, op))


def _rel_exp(rel, ctx):
    f, g = ctx.f, ctx.g
    if rel is R.Equal:
        return R.Equal
    if rel in (R.Less, R.Greater, R.LessEq, R.GreaterEq):
        d = sub(f, g)
        if _bounded(d, ctx):
            return rel
        return {R.Less: R.MuchLess, R.LessEq: R.MuchLess,
                R.Greater: R.MuchGreater, R.GreaterEq: R.MuchGreater}[rel]
    if rel in (R.MuchLess, R.MuchGreater):
        if _diverges_up(f, ctx) and _diverges_up(g, ctx):
            return rel
        if rel is R.MuchLess and _diverges_down(f, ctx) and _diverges_up(g, ctx):
            return R.MuchLess
        if rel is R.MuchGreater and _diverges_up(f, ctx) and _diverges_down(g, ctx):
            return R.MuchGreater
        raise ConditionViolated("f and g must both diverge to +infinity")
    _unsupported(rel, "exp")


def _rel_ln(rel, ctx):
    f, g = ctx.f, ctx.g
    if not (_all_positive(f, ctx) and _all_positive(g, ctx)):
        raise ConditionViolated("f and g must be positive")
    if rel in _ORDER_RELS:
        return rel
    if rel is R.MuchLess:
        return R.MuchLess if logdom(g, f, ctx.p, ctx.a, ctx.terms, ctx.var) else R.Less
    if rel is R.MuchGreater:
        return R.MuchGreater if logdom(f, g, ctx.p, ctx.a, ctx.terms, ctx.var) else R.Greater
    _unsupported(rel, "ln")


def _rel_diff(rel, ctx):
    f, g = ctx.f, ctx.g
    if rel is R.Equal:
        return R.Equal
    if rel in (R.MuchLess, R.MuchGreater):
        if (_diverges_up(f, ctx) and _diverges_up(g, ctx)):
            return rel
        raise ConditionViolated("f and g must be positive and divergent")
    if rel in (R.Less, R.Greater, R.LessEq, R.GreaterEq):
        df, dg = differentiate(f), differentiate(g)
        if _is_constant(sub(df, dg), ctx):
            raise ConditionViolated("Df - Dg is constant")
        verdict = _engine(ctx, df, dg)
        if verdict.holds(rel):
            return rel
        raise ConditionViolated("Df %s Dg fails (engine finds Df %s Dg)"
                                % (rel.token, verdict.order.value))
    _unsupported(rel, "D")


def _rel_int(rel, ctx):
    if rel not in (R.MuchLess, R.MuchGreater, R.Less, R.Greater, R.LessEq,
                   R.GreaterEq, R.Equal):
        _unsupported(rel, "int")
    if ctx.new_f is not None and ctx.new_g is not None:
        if not _engine(ctx, ctx.new_f, ctx.new_g).holds(rel):
            raise ConditionViolated("integration constants cannot be ignored here")
    return rel


def _factor_sign(c, ctx):
    if isinstance(c, Expr):
        if not contains_var(c):
            from .expr import to_coeff
            from .coeff import sign_of
            return sign_of(to_coeff(ctx.a.apply(c)), ctx.a)
        signs = set(_signs(c, ctx))
        return signs.pop() if len(signs) == 1 else Sign.UNKNOWN
    c = Fraction(c)
    return Sign.POSITIVE if c > 0 else Sign.NEGATIVE if c < 0 else Sign.ZERO


def _rel_mul(rel, c, ctx):
    s = _factor_sign(c, ctx)
    if s is Sign.ZERO:
        raise ConditionViolated("factor must be nonzero")
    if s not in (Sign.POSITIVE, Sign.NEGATIVE):
        raise ConditionViolated("sign of the factor must be known")
    if rel in (R.LogMuchLess, R.LogMuchGreater):
        _unsupported(rel, "mul")
    if rel is R.SimEq:
        if isinstance(c, Expr) and contains_var(c):
            _unsupported(rel, "mul by a function")
        return rel
    if rel in _MAGNITUDE_RELS:
        return rel
    return rel if s is Sign.POSITIVE else _FLIP_ORDER[rel]


def _rel_add(rel, lam, ctx):
    if rel in _ORDER_RELS or rel is R.SimEq:
        return rel
    if rel in _MAGNITUDE_RELS:
        for side in (ctx.f, ctx.g):
            if _engine(ctx, lam, side).magnitude is not R.MuchLess:
                raise ConditionViolated("lambda must be much less than f and g")
        return rel
    _unsupported(rel, "add")


def _rel_recip(rel, ctx):
    if rel in (R.MuchLess, R.MuchGreater, R.PrecEq, R.SuccEq):
        return rel.reverse()
    if rel in (R.Propto, R.Sim, R.Equal):
        return rel
    if rel in _ORDER_RELS:
        same = ((_all_positive(ctx.f, ctx) and _all_positive(ctx.g, ctx))
                or (_all_negative(ctx.f, ctx) and _all_negative(ctx.g, ctx)))
        if not same:
            raise ConditionViolated("f and g must have the same strict sign")
        return _FLIP_ORDER[rel]
    _unsupported(rel, "recip")


def _rel_neg(rel, ctx):
    if rel in _ORDER_RELS:
        return _FLIP_ORDER[rel]
    if rel in _MAGNITUDE_RELS or rel is R.SimEq:
        return rel
    _unsupported(rel, "neg")


def apply_rel_op(rel, op, ctx):
    """The relation between op(f) and op(g), given ``f rel g``.

    ctx carries f, g, the point and the assumptions; side conditions of the
    table row are checked with the engine and reported as ConditionViolated.
    """
    if isinstance(ctx, dict):
        ctx = RelContext(**ctx)
    k = op.kind
    if k == "ApplyExp":
        return _rel_exp(rel, ctx)
    if k == "ApplyLn":
        return _rel_ln(rel, ctx)
    if k == "Differentiate":
        return _rel_diff(rel, ctx)
    if k == "Integrate":
        return _rel_int(rel, ctx)
    if k == "ScalarMul":
        return _rel_mul(rel, op.arg, ctx)
    if k == "AddBoth":
        return _rel_add(rel, op.arg, ctx)
    if k == "Reciprocal":
        return _rel_recip(rel, ctx)
    if k == "Negate":
        return _rel_neg(rel, ctx)
    raise UnsupportedRow("unknown operator %s" % k)


def weaken(rel, target, ctx=None):
    """Replace rel by a weaker relation; engine-checked where a sign matters."""
    if implies(rel, target):
        return target
    if isinstance(ctx, dict):
        ctx = RelContext(**ctx)
    if (rel, target) in ((R.MuchGreater, R.Greater), (R.MuchGreater, R.GreaterEq)):
        if ctx is None or not _all_positive(ctx.f, ctx):
            raise ConditionViolated("f must be positive")
        return target
    if (rel, target) in ((R.MuchLess, R.Less), (R.MuchLess, R.LessEq)):
        if ctx is None or not _all_positive(ctx.g, ctx):
            raise ConditionViolated("g must be positive")
        return target
    if (rel, target) in ((R.LogMuchGreater, R.MuchGreater), (R.LogMuchLess, R.MuchLess)):
        if ctx is None or not (_diverges_up(ctx.f, ctx) and _diverges_up(ctx.g, ctx)):
            raise ConditionViolated("f and g must be positive and divergent")
        return target
    raise UnsupportedRow("%s does not weaken to %s" % (rel.token, target.token))


# -- derivation chains -------------------------------------------------------------------


@dataclass
class ChainStep:
    lhs: Expr
    rel: Relation  # None stands for the unknown relation z
    rhs: Expr
    point: Point
    justification: object  # RelOp or "solve" | "absorb" | "given" | "weaken"
    var: str = "x"
    line: int = 0
    text: str = ""
    error: str = None


@dataclass
class Chain:
    steps: list
    assumptions: Assumptions = field(default_factory=Assumptions)


@dataclass
class StepReport:
    line: int
    ok: bool
    reason: str = ""

    def __str__(self):
        return "line %d: %s" % (self.line, "OK" if self.ok else "FAIL: " + self.reason)


@dataclass
class ChainReport:
    steps: list

    @property
    def ok(self):
        return all(s.ok for s in self.steps)

    def render(self):
        out = [str(s) for s in self.steps]
        out.append("chain %s" % ("OK" if self.ok else "FAILED"))
        return "\n".join(out)


_OP_RE = re.compile(r"^(exp|ln|D|int|recip|neg|solve|absorb|given|weaken)$|^(mul|add)\((.*)\)$")


def _parse_op(text, var, params):
    text = text.strip()
    m = _OP_RE.match(text)
    if not m:
        raise ParseError("unknown justification %r" % text, 0,
                         ("exp", "ln", "D", "int", "mul(c)", "add(e)", "recip", "neg",
                          "solve", "absorb", "given", "weaken"))
    if m.group(1):
        tok = m.group(1)
        simple = {"exp": RelOp.ApplyExp, "ln": RelOp.ApplyLn, "D": RelOp.Differentiate,
                  "int": RelOp.Integrate, "recip": RelOp.Reciprocal, "neg": RelOp.Negate}
        return simple.get(tok, tok)
    arg = _as_expr(m.group(3), var, params)
    if m.group(2) == "mul":
        if arg.kind == "const":
            return RelOp.scalar_mul(arg.value)
        return RelOp.scalar_mul(arg)
    return RelOp.add_both(arg)


def _parse_step(line, lineno, prev_var, prev_point):
    parts = [p.strip() for p in line.split(";")]
    if len(parts) < 4:
        raise ParseError("expected 'lhs ; REL ; rhs ; [at v=p ;] by op'", 0, (";",))
    var, point = prev_var, prev_point
    rest = parts[3:]
    if rest and rest[0].startswith("at "):
        var, point = Point.parse(rest[0][3:])
        rest = rest[1:]
    if len(rest) != 1 or not rest[0].startswith("by "):
        raise ParseError("missing 'by <justification>'", len(line), ("by",))
    rel = None if parts[1] == "z" else Relation.from_token(parts[1])
    lhs = _as_expr(parts[0], var)
    rhs = _as_expr(parts[2], var)
    just = _parse_op(rest[0][3:], var, ())
    return ChainStep(lhs, rel, rhs, point, just, var, lineno, line)


def parse_chain(text, assumptions=None):
    """Parse a chain file; malformed lines become steps carrying an error.

    A line ``assume: a>0, b>0`` sets the assumptions; ``#`` starts a comment.
    """
    steps = []
    assume_text = []
    var, point = "x", Point.infinity()
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("assume:"):
            assume_text.append(line[len("assume:"):])
            continue
        try:
            step = _parse_step(line, i, var, point)
            var, point = step.var, step.point
        except GossamerError as exc:
            step = ChainStep(None, None, None, point, None, var, i, line, str(exc))
        steps.append(step)
    if isinstance(assumptions, Assumptions):
        a = assumptions
    else:
        joined = ",".join(t for t in [assumptions or ""] + assume_text if t.strip())
        a = Assumptions.parse(joined)
    return Chain(steps, a)


def _equal_at(a, b, var, point, assume):
    """a and b are the same function near the point."""
    from .numeric import numerically_equal
    a, b = assume.apply(a), assume.apply(b)
    if a == b or sub(a, b) == ZERO:
        return True
    ctx = RelContext(a, b, point, assume)
    ctx.var = var
    try:
        zeros = _sides(sub(a, b), ctx, lambda x: x.is_exact_zero())
        if all(zeros):
            return True
        # a nonzero leading term means the functions differ
        _sides(sub(a, b), ctx, lambda x: x.lead())
        return False
    except PrecisionExhausted:
        pass
    if a.kind == "const" or params_free(a, b):
        shifted = [to_infinity(x, point, var)[0][1] for x in (a, b)]
        return numerically_equal(shifted[0], shifted[1], [10 ** 3, 10 ** 6, 10 ** 9])
    return False


def params_free(*es):
    from .expr import params_of
    return not any(params_of(e) for e in es)


def _check_op_sides(step, prev, op, assume):
    if op.kind == "Integrate":
        for new, old in ((step.lhs, prev.lhs), (step.rhs, prev.rhs)):
            ctx = RelContext(new, old, step.point, assume)
            ctx.var = step.var
            if not _is_constant(sub(differentiate(new), old), ctx):
                return "D(%s) differs from %s by a non-constant" % (new, old)
        return None
    for new, old, side in ((step.lhs, prev.lhs, "left"), (step.rhs, prev.rhs, "right")):
        want = op.apply(old)
        if not _equal_at(new, want, step.var, step.point, assume):
            return "%s side should be %s" % (side, to_string(want))
    return None


def _verify_step(step, prev, assume):
    just = step.justification
    ctx = RelContext(prev.lhs if prev else step.lhs, prev.rhs if prev else step.rhs,
                     step.point, assume, step.lhs, step.rhs)
    ctx.var = step.var
    if just == "given":
        return None
    if just == "solve":
        if prev is not None and not (_equal_at(step.lhs, prev.lhs, step.var, step.point, assume)
                                     and _equal_at(step.rhs, prev.rhs, step.var, step.point,
                                                   assume)):
            return "solve must keep the sides of the previous step"
        if step.rel is None:
            return "solve must name the relation it finds"
        verdict = compare(step.lhs, step.rhs, step.point, assume, var=step.var)
        ok = verdict.holds(step.rel)
        if ok:
            if prev is not None and prev.rel is not None and not verdict.holds(prev.rel):
                return ("contradiction: previous step asserts %s but solving gives %s"
                        % (prev.rel.token, _verdict_str(verdict)))
            return None
        if ok is None:
            return "cannot decide %s: sign of the difference is unknown" % step.rel.token
        return ("contradiction: solving gives %s, which contradicts %s"
                % (_verdict_str(verdict), step.rel.token))
    if prev is None:
        return "first step must be 'given' or 'solve'"
    if (step.var, step.point) != (prev.var, prev.point):
        return "point changed from %s=%s" % (prev.var, prev.point)
    if just == "weaken":
        if not (_equal_at(step.lhs, prev.lhs, step.var, step.point, assume)
                and _equal_at(step.rhs, prev.rhs, step.var, step.point, assume)):
            return "weaken must keep the sides"
        if prev.rel is None or step.rel is None:
            return "weaken needs known relations"
        weaken(prev.rel, step.rel, ctx)
        return None
    if just == "absorb":
        for new, old, side in ((step.lhs, prev.lhs, "left"), (step.rhs, prev.rhs, "right")):
            if not compare(old, new, step.point, assume, var=step.var).asymptotic:
                return "%s side %s is not the leading part of %s" % (side, new, old)
        if step.rel is None:
            return None
        if prev.rel is None:
            return "relation not derivable from the unknown z"
        if prev.rel in _MAGNITUDE_RELS and implies(prev.rel, step.rel):
            return None
        if compare(step.lhs, step.rhs, step.point, assume, var=step.var).holds(step.rel):
            return None
        return "absorbing changed the relation: engine does not confirm %s" % step.rel.token
    problem = _check_op_sides(step, prev, just, assume)
    if problem:
        return problem
    if step.rel is None:
        return None
    if prev.rel is None:
        return "relation not derivable from the unknown z"
    derived = apply_rel_op(prev.rel, just, ctx)
    if implies(derived, step.rel):
        return None
    return "%s applied to %s gives %s, not %s" % (just, prev.rel.token, derived.token,
                                                  step.rel.token)


def _verdict_str(v):
    return "%s (order %s)" % (v.relation.token, v.order.value)


def verify_chain(chain, assumptions=None):
    """Check every step; failures are reported per line, never raised."""
    if isinstance(chain, str):
        chain = parse_chain(chain, assumptions)
    reports = []
    prev = None
    for step in chain.steps:
        if step.error:
            reports.append(StepReport(step.line, False, "parse error: " + step.error))
            prev = None
            continue
        try:
            reason = _verify_step(step, prev, chain.assumptions)
        except (ConditionViolated, UnsupportedRow) as exc:
            reason = str(exc)
        except GossamerError as exc:
            reason = "%s: %s" % (type(exc).__name__, exc)
        reports.append(StepReport(step.line, reason is None, reason or ""))
        prev = step
    return ChainReport(reports)


# -- monotone tails --------------------------------------------------------------------------


def is_monotone_tail(term, a=None, var=None, terms=None):
    """Increasing, Decreasing or Constant from the sign of a(n+1) - a(n) at infinity."""
    from .expr import Var, substitute, const
    var = var or (free_var(term) if isinstance(term, Expr) else "n") or "n"
    term = _as_expr(term, var)
    a = Assumptions.parse(a) if not isinstance(a, Assumptions) else a
    term = a.apply(term)
    if not contains_var(term):
        return Monotonicity.Constant
    diff = sub(substitute(term, add(Var(var), const(1))), term)
    if diff == ZERO:
        return Monotonicity.Constant

    def body(ctx):
        x = expand_in(diff, ctx)
        if x.is_exact_zero():
            return Monotonicity.Constant
        c = x.lead()[0]
        s = ctx.strict_sign(c, "%s > 0 or %s < 0 (leading term of a(n+1) - a(n))" % (c, c))
        return Monotonicity.Increasing if s > 0 else Monotonicity.Decreasing

    return with_precision(body, a, terms, var=var)

