"""Truncated multiseries: the working representation of a gossamer number.

A :class:`GNum` is a finite list of ``(coefficient, monomial)`` terms sorted
by strictly decreasing growth, plus an optional error monomial ``err``: the
true value equals the listed terms plus something no larger than ``err``.
``err is None`` means the expansion is exact.

Expansion always happens at main-variable -> +infinity; other points are
shifted there first.  When cancellation eats every known term, the internal
:class:`NeedMorePrecision` signal makes :func:`with_precision` retry with a
doubled budget, up to 64 terms.
"""

import enum
import functools
import math
import os
from fractions import Fraction

from .coeff import Coeff, Sign
from .errors import (AssumptionNeeded, DivisionByExactZero, NeedMorePrecision,
                     PrecisionExhausted, UndefinedAtPoint, GossamerError)
from .expr import (Assumptions, Point, add, ln, mul, power, const,
                   to_infinity, to_string)
from .scale import (Context, IterLog, Monomial, ONE_MONO, VAR,
                    DEFAULT_MAX_HEIGHT)

__all__ = [
    "GNum", "Components", "Form", "ExtendedReal", "expand", "expand_in",
    "with_precision", "add_g", "mul_g", "neg_g", "inv_g", "components",
    "classify", "st", "absorb", "absorb_product", "sign_leading",
    "default_terms", "MAX_TERMS",
]

MAX_TERMS = 64


def default_terms():
    """Truncation budget, overridable through GOSSAMER_MAX_TERMS."""
    raw = os.environ.get("GOSSAMER_MAX_TERMS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 8


class GNum:
    __slots__ = ("terms", "err", "ctx")

    def __init__(self, terms, err, ctx):
        self.terms = terms
        self.err = err
        self.ctx = ctx

    # -- construction ----------------------------------------------------------

    @classmethod
    def build(cls, ctx, table, err=None):
        """Normalize a mapping monomial -> Coeff plus an error monomial."""
        items = [(c, m) for m, c in table.items() if not c.is_zero()]
        if err is not None:
            items = [(c, m) for c, m in items if ctx.cmp(m, err) > 0]
        items.sort(key=functools.cmp_to_key(lambda a, b: ctx.cmp(b[1], a[1])))
        if len(items) > ctx.T:
            cut = items[ctx.T][1]
            err = cut if err is None or ctx.cmp(cut, err) > 0 else err
            items = items[:ctx.T]
        return cls(tuple(items), err, ctx)

    @classmethod
    def zero(cls, ctx):
        return cls((), None, ctx)

    @classmethod
    def constant(cls, ctx, c):
        if not isinstance(c, Coeff):
            c = Coeff.const(c)
        if c.is_zero():
            return cls.zero(ctx)
        return cls(((c, ONE_MONO),), None, ctx)

    @classmethod
    def monomial(cls, ctx, m, c=None):
        c = Coeff.const(1) if c is None else c
        return cls(((c, m),), None, ctx)

    @classmethod
    def big_o(cls, ctx, m):
        return cls((), m, ctx)

    # -- inspection --------------------------------------------------------------

    @property
    def exhausted(self):
        return self.err is not None

    def is_exact_zero(self):
        return not self.terms and self.err is None

    def lead(self):
        if self.terms:
            return self.terms[0]
        if self.err is None:
            raise DivisionByExactZero("leading term of exact zero")
        raise NeedMorePrecision("every known term cancelled")

    def __repr__(self):
        return "GNum(%s)" % self.render()

    def render(self, var=None, multiline=False):
        """Inline ``a + b*x^-1 + O(x^-2)``, or the same with one term per line."""
        var = var or self.ctx.var
        parts = []
        for c, m in self.terms:
            neg = bool(c.num) and all(q < 0 for _, q in c.num)
            mag = -c if neg else c
            if m.is_one:
                body = str(mag)
            elif mag.is_one():
                body = m.render(var)
            else:
                body = "%s*%s" % (_coeff_str(mag), m.render(var))
            parts.append(("-" if neg else "+", body))
        if self.err is not None:
            parts.append(("+", "O(%s)" % self.err.render(var)))
        if not parts:
            return "0"
        first = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        rest = ["%s %s" % p for p in parts[1:]]
        return "\n".join([first] + rest) if multiline else " ".join([first] + rest)

    # -- arithmetic ----------------------------------------------------------------

    def _table(self):
        return {m: c for c, m in self.terms}

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            other = GNum.constant(self.ctx, other)
        table = self._table()
        for c, m in other.terms:
            table[m] = table[m] + c if m in table else c
        return GNum.build(self.ctx, table, _max_err(self.ctx, self.err, other.err))

    __radd__ = __add__

    def __neg__(self):
        return GNum(tuple((-c, m) for c, m in self.terms), self.err, self.ctx)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            other = GNum.constant(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not isinstance(c, Coeff):
            c = Coeff.const(c)
        if c.is_zero():
            return GNum.zero(self.ctx)
        return GNum(tuple((c * t, m) for t, m in self.terms), self.err, self.ctx)

    def mul_monomial(self, mono):
        if mono.is_one:
            return self
        err = self.err * mono if self.err is not None else None
        return GNum(tuple((c, m * mono) for c, m in self.terms), err, self.ctx)

    def _bound(self):
        """A monomial bounding the magnitude of the whole number."""
        if self.terms:
            return self.terms[0][1]
        return self.err

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            return self.scale(other)
        ctx = self.ctx
        if self.is_exact_zero() or other.is_exact_zero():
            return GNum.zero(ctx)
        table = {}
        for c1, m1 in self.terms:
            for c2, m2 in other.terms:
                m = m1 * m2
                c = c1 * c2
                table[m] = table[m] + c if m in table else c
        err = None
        if self.err is not None:
            err = _max_err(ctx, err, self.err * other._bound())
        if other.err is not None:
            err = _max_err(ctx, err, other.err * self._bound())
        return GNum.build(ctx, table, err)

    __rmul__ = __mul__

    def inv(self):
        c, m = self.lead()
        rest = GNum(self.terms[1:], self.err, self.ctx).mul_monomial(m.inverse()) \
            .scale(c.inverse())
        series = _series(self.ctx, rest, lambda k: Coeff.const((-1) ** k))
        return series.mul_monomial(m.inverse()).scale(c.inverse())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            c = other if isinstance(other, Coeff) else Coeff.const(other)
            if c.is_zero():
                raise DivisionByExactZero("division by exact zero")
            return self.scale(c.inverse())
        if other.is_exact_zero():
            raise DivisionByExactZero("division by exact zero")
        return self * other.inv()

    def exp(self):
        ctx = self.ctx
        if self.is_exact_zero():
            return GNum.constant(ctx, 1)
        if self.err is not None and ctx.growth(self.err) >= 0:
            raise NeedMorePrecision("exponent known only up to a bounded error")
        mono = ONE_MONO
        c0 = Coeff.const(0)
        small = []
        for c, m in self.terms:
            g = ctx.growth(m)
            if g > 0:
                mono = mono * ctx.exp_monomial(c, m)
            elif g == 0:
                c0 = c
            else:
                small.append((c, m))
        phi = GNum(tuple(small), self.err, ctx)
        series = _series(ctx, phi, _exp_coeff)
        return series.scale(c0.exp()).mul_monomial(mono)

    def ln(self):
        ctx = self.ctx
        c, m = self.lead()
        s = ctx.sign(c)
        if s in (Sign.NEGATIVE, Sign.NONPOSITIVE):
            raise UndefinedAtPoint("logarithm of a quantity tending to a negative value")
        if s is not Sign.POSITIVE:
            raise AssumptionNeeded("%s > 0 (leading coefficient under ln)" % c)
        rest = GNum(self.terms[1:], self.err, ctx).mul_monomial(m.inverse()) \
            .scale(c.inverse())
        table = {}
        for b, e in m.items:
            lm = b.log_monomial()
            table[lm] = table[lm] + e if lm in table else e
        out = GNum.build(ctx, table)
        lc = c.ln(ctx.assumptions)
        if not lc.is_zero():
            out = out + GNum.constant(ctx, lc)
        if rest.terms or rest.err is not None:
            out = out + _series(ctx, rest, _log_coeff)
        return out

    # -- views ------------------------------------------------------------------------

    def growth_of_lead(self):
        c, m = self.lead()
        return self.ctx.growth(m)


def _coeff_str(c):
    s = str(c)
    if c.is_polynomial and len(c.num) == 1:
        return s
    return "(%s)" % s


def _max_err(ctx, a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if ctx.cmp(a, b) >= 0 else b


def _exp_coeff(k):
    return Coeff.const(Fraction(1, math.factorial(k)))


def _log_coeff(k):
    if k == 0:
        return Coeff.const(0)
    return Coeff.const(Fraction((-1) ** (k + 1), k))


def _series(ctx, r, coeff):
    """Sum of coeff(k) * r**k for a number r tending to zero."""
    c0 = coeff(0)
    out = GNum.constant(ctx, c0)
    if r.is_exact_zero():
        return out
    if not r.terms:
        return out + GNum.big_o(ctx, r.err)
    lead_m = r.terms[0][1]
    if ctx.growth(lead_m) >= 0:
        raise AssertionError("series argument does not tend to zero")
    if r.err is not None and ctx.growth(r.err) >= 0:
        raise NeedMorePrecision("series argument known only up to O(1)")
    power_ = GNum.constant(ctx, 1)
    k = 0
    limit = 4 * ctx.T + 8
    while True:
        k += 1
        power_ = power_ * r
        ck = coeff(k)
        if not ck.is_zero():
            out = out + power_.scale(ck)
        nxt = lead_m ** (k + 1)
        horizon = out.err
        if len(out.terms) >= ctx.T:
            last = out.terms[-1][1]
            horizon = last if horizon is None or ctx.cmp(last, horizon) > 0 else horizon
        if horizon is not None and ctx.cmp(nxt, horizon) < 0:
            break
        if power_.is_exact_zero() or k >= limit:
            break
    return out + GNum.big_o(ctx, lead_m ** (k + 1))


# -- expansion ------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _bernoulli(n):
    """Bernoulli numbers B_n with B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = Fraction(0)
        for j in range(m):
            s += math.comb(m + 1, j) * b[j]
        b.append(-s / (m + 1))
    return b[n]


def _stirling_log(arg, ctx):
    """ln(arg!) for arg = x + r as a GNum, from the Stirling series."""
    k_max = max(2, ctx.T)
    half = const(Fraction(1, 2))
    body = add(mul(add(arg, half), ln(arg)), mul(const(-1), arg))
    for k in range(1, k_max + 1):
        coef = _bernoulli(2 * k) / (2 * k * (2 * k - 1))
        body = add(body, mul(const(coef), power(arg, const(1 - 2 * k))))
    out = expand_in(body, ctx)
    out = out + GNum.constant(ctx, Coeff.ln_2pi() * Fraction(1, 2))
    tail = Monomial.of(VAR, -(2 * k_max + 1))
    return out + GNum.big_o(ctx, tail)


def expand_in(e, ctx):
    """Expand e at main-variable -> infinity under an existing context."""
    hit = ctx.memo.get(e.key)
    if hit is not None:
        return hit
    k = e.kind
    if k == "const":
        out = GNum.constant(ctx, e.value)
    elif k == "param":
        out = GNum.constant(ctx, Coeff.param(e.name))
    elif k == "var":
        out = GNum.monomial(ctx, Monomial.of(VAR))
    elif k == "add":
        out = GNum.zero(ctx)
        for a in e.args:
            out = out + expand_in(a, ctx)
    elif k == "mul":
        out = expand_in(e.args[0], ctx)
        for a in e.args[1:]:
            out = out * expand_in(a, ctx)
    elif k == "div":
        den = expand_in(e.den, ctx)
        if den.is_exact_zero():
            raise DivisionByExactZero("denominator %s is exactly zero" % to_string(e.den))
        out = expand_in(e.num, ctx) * den.inv()
    elif k == "ln":
        inner = expand_in(e.arg, ctx)
        if inner.is_exact_zero():
            raise UndefinedAtPoint("ln of exact zero")
        out = inner.ln()
    elif k == "exp":
        out = expand_in(e.arg, ctx).exp()
    elif k == "fact":
        out = _stirling_log(e.arg, ctx).exp()
    else:
        raise GossamerError("cannot expand node %s" % k)
    ctx.memo[e.key] = out
    return out


def with_precision(body, assumptions=None, terms=None, max_height=DEFAULT_MAX_HEIGHT,
                   var="x", point=None):
    """Run body(ctx), doubling the term budget on cancellation up to 64."""
    assumptions = assumptions if assumptions is not None else Assumptions()
    t = terms or default_terms()
    cap = max(MAX_TERMS, t)
    last = None
    while True:
        ctx = Context(assumptions, t, max_height, var, point)
        try:
            return body(ctx)
        except NeedMorePrecision as exc:
            last = exc
        if t >= cap:
            break
        t = min(2 * t, cap)
    raise PrecisionExhausted("could not separate terms within %d terms (%s)" % (cap, last))


def expand(e, point=None, assumptions=None, terms=None, max_height=DEFAULT_MAX_HEIGHT):
    """Multiseries of e at the point, with at most ``terms`` terms.

    Finite points are moved to infinity with x = a + 1/t (or a - 1/t from the
    left); the returned series is in the shifted variable.  At a two-sided
    point the right-hand approach is expanded.
    """
    from .expr import free_var
    point = point or Point.infinity()
    assumptions = assumptions if assumptions is not None else Assumptions()
    var = free_var(e) or "x"
    e = assumptions.apply(e)
    sides = to_infinity(e, point, var)
    # a two-sided point expands the right-hand approach; limits check both
    se = sides[0][1]
    return with_precision(lambda ctx: expand_in(se, ctx), assumptions, terms,
                          max_height, var, point)


# -- module-level operations ------------------------------------------------------------


def add_g(x, y):
    return x + y


def mul_g(x, y):
    return x * y


def neg_g(x):
    return -x


def inv_g(x):
    if x.is_exact_zero():
        raise DivisionByExactZero("inverse of exact zero")
    return x.inv()


class Components:
    """Infinitesimal, real and infinite parts of a GNum."""

    __slots__ = ("phi", "real", "inf")

    def __init__(self, phi, real, inf):
        self.phi = phi
        self.real = real
        self.inf = inf

    def __repr__(self):
        return "Components(phi=%s, real=%s, inf=%s)" % (
            self.phi.render(), self.real, self.inf.render())


def components(x):
    ctx = x.ctx
    phi, inf = [], []
    real = Coeff.const(0)
    for c, m in x.terms:
        g = ctx.growth(m)
        if g > 0:
            inf.append((c, m))
        elif g < 0:
            phi.append((c, m))
        else:
            real = c
    err_phi = err_inf = None
    if x.err is not None:
        if ctx.growth(x.err) < 0:
            err_phi = x.err
        else:
            err_inf = x.err
    return Components(GNum(tuple(phi), err_phi, ctx), real,
                      GNum(tuple(inf), err_inf, ctx))


class Form(enum.Enum):
    PHI = "Φ"
    PHI_REAL = "Φ+ℝ"
    PHI_INF = "Φ+Φ*⁻¹"
    PHI_REAL_INF = "Φ+ℝ+Φ*⁻¹"
    REAL = "ℝ"
    REAL_INF = "ℝ+Φ*⁻¹"
    INF = "Φ*⁻¹"
    EXACT_ZERO = "0"

    @property
    def ascii(self):
        return {
            "PHI": "Phi", "PHI_REAL": "Phi+R", "PHI_INF": "Phi+Phi*^-1",
            "PHI_REAL_INF": "Phi+R+Phi*^-1", "REAL": "R", "REAL_INF": "R+Phi*^-1",
            "INF": "Phi*^-1", "EXACT_ZERO": "ExactZero",
        }[self.name]

    @property
    def is_infinitesimal(self):
        return self is Form.PHI

    @property
    def is_infinite(self):
        return self in (Form.INF, Form.REAL_INF, Form.PHI_INF, Form.PHI_REAL_INF)


def classify(x):
    if x.is_exact_zero():
        return Form.EXACT_ZERO
    if not x.terms:
        raise NeedMorePrecision("no known terms to classify")
    comp = components(x)
    has_phi = bool(comp.phi.terms)
    has_real = not comp.real.is_zero()
    has_inf = bool(comp.inf.terms)
    return {
        (True, False, False): Form.PHI,
        (True, True, False): Form.PHI_REAL,
        (True, False, True): Form.PHI_INF,
        (True, True, True): Form.PHI_REAL_INF,
        (False, True, False): Form.REAL,
        (False, True, True): Form.REAL_INF,
        (False, False, True): Form.INF,
    }[(has_phi, has_real, has_inf)]


class ExtendedReal:
    """A finite exact constant or one of the two signed infinities."""

    __slots__ = ("kind", "value")

    def __init__(self, kind, value=None):
        self.kind = kind
        self.value = value

    @classmethod
    def finite(cls, c):
        return cls("finite", c if isinstance(c, Coeff) else Coeff.const(c))

    @property
    def is_finite(self):
        return self.kind == "finite"

    def __eq__(self, other):
        if not isinstance(other, ExtendedReal) or self.kind != other.kind:
            return False
        return self.kind != "finite" or (self.value - other.value).is_zero()

    def __hash__(self):
        return hash((self.kind, self.value.key if self.value is not None else None))

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        return self.kind

    def __repr__(self):
        return "ExtendedReal(%s)" % self


PLUS_INFINITY = ExtendedReal("+inf")
MINUS_INFINITY = ExtendedReal("-inf")


def st(x):
    """Standard part: infinitesimals to 0, infinities to +/-inf."""
    if x.is_exact_zero():
        return ExtendedReal.finite(0)
    ctx = x.ctx
    if x.terms:
        c, m = x.terms[0]
        if ctx.growth(m) > 0:
            s = ctx.strict_sign(c, "%s > 0 or %s < 0 (sign of leading coefficient)"
                                % (c, c))
            return PLUS_INFINITY if s > 0 else MINUS_INFINITY
    if x.err is not None and ctx.growth(x.err) >= 0:
        raise NeedMorePrecision("real part hidden behind truncation")
    return ExtendedReal.finite(components(x).real)


def absorb(x):
    """Keep only the leading growth class (non-reversible a + b = a)."""
    if x.is_exact_zero():
        return x
    c, m = x.lead()
    return GNum(((c, m),), None, x.ctx)


def _logdom_g(x, y):
    lx, ly = x.ln(), y.ln()
    if ly.is_exact_zero():
        return not lx.is_exact_zero() and lx.growth_of_lead() >= 0 and \
            x.ctx.growth(lx.lead()[1]) > 0
    if lx.is_exact_zero():
        return False
    ratio = ly / lx
    return ratio.ctx.growth(ratio.lead()[1]) < 0


def absorb_product(x, y):
    """x when x log-dominates y (then x*y = x), otherwise the full product."""
    for v in (x, y):
        if v.is_exact_zero():
            return x * y
        if v.ctx.sign(v.lead()[0]) is not Sign.POSITIVE:
            raise AssumptionNeeded("positive leading coefficient of %s" % v.render())
    if y.terms == ((Coeff.const(1), ONE_MONO),) and y.err is None:
        return x
    if _logdom_g(x, y):
        return x
    return x * y


def sign_leading(x):
    if x.is_exact_zero():
        return Sign.ZERO
    if not x.terms:
        return Sign.UNKNOWN
    s = x.ctx.sign(x.terms[0][0])
    return s if s in (Sign.POSITIVE, Sign.NEGATIVE) else Sign.UNKNOWN


def expand_all(exprs, point=None, assumptions=None, terms=None):
    """Expand several expressions under one shared context (same basis)."""
    from .expr import free_var
    point = point or Point.infinity()
    assumptions = assumptions if assumptions is not None else Assumptions()
    var = next((v for v in (free_var(e) for e in exprs) if v), "x")
    shifted = [to_infinity(assumptions.apply(e), point, var) for e in exprs]
    if any(len(s) != 1 for s in shifted):
        raise UndefinedAtPoint("expand_all needs a one-sided point")

    def body(ctx):
        return [expand_in(s[0][1], ctx) for s in shifted]

    return with_precision(body, assumptions, terms, var=var, point=point)


__all__.append("expand_all")
