"""Exact constants: rational functions over symbolic atoms.

A :class:`Coeff` is a quotient of two polynomials whose "variables" are
atoms: declared parameters, logarithms of primes, and the closed forms that
arise when ``exp`` and ``ln`` are applied to constants (``exp(1)``,
``ln(a)``, ``exp(a*ln(2))`` and so on).  Atom exponents are rational, so
``sqrt(a)`` is the monomial ``a^(1/2)``.

Zero recognition is exact for anything the canonical polynomial form can
see.  Signs are resolved from parameter assumptions and, for parameter-free
constants, by rigorous interval evaluation.
"""

import enum
import math
from fractions import Fraction

from mpmath import iv, mp

from .errors import AssumptionNeeded, UndefinedAtPoint

__all__ = ["Atom", "Coeff", "Sign", "sign_of", "factor_rational"]


class Sign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"
    NONNEGATIVE = "NonNegative"
    NONPOSITIVE = "NonPositive"
    UNKNOWN = "Unknown"

    @property
    def strict(self):
        return self in (Sign.POSITIVE, Sign.NEGATIVE, Sign.ZERO)

    def __neg__(self):
        return _NEG_SIGN[self]

    def __mul__(self, other):
        if Sign.ZERO in (self, other):
            return Sign.ZERO
        if Sign.UNKNOWN in (self, other):
            return Sign.UNKNOWN
        neg = (self in _NEGATIVE_SIDE) != (other in _NEGATIVE_SIDE)
        weak = not (self in _STRICT_NONZERO and other in _STRICT_NONZERO)
        if neg:
            return Sign.NONPOSITIVE if weak else Sign.NEGATIVE
        return Sign.NONNEGATIVE if weak else Sign.POSITIVE

    def __add__(self, other):
        if self is Sign.ZERO:
            return other
        if other is Sign.ZERO:
            return self
        if Sign.UNKNOWN in (self, other):
            return Sign.UNKNOWN
        up = {Sign.POSITIVE, Sign.NONNEGATIVE}
        down = {Sign.NEGATIVE, Sign.NONPOSITIVE}
        for side, strong, weak in ((up, Sign.POSITIVE, Sign.NONNEGATIVE),
                                   (down, Sign.NEGATIVE, Sign.NONPOSITIVE)):
            if self in side and other in side:
                return strong if strong in (self, other) else weak
        return Sign.UNKNOWN


_NEG_SIGN = {
    Sign.POSITIVE: Sign.NEGATIVE,
    Sign.NEGATIVE: Sign.POSITIVE,
    Sign.ZERO: Sign.ZERO,
    Sign.NONNEGATIVE: Sign.NONPOSITIVE,
    Sign.NONPOSITIVE: Sign.NONNEGATIVE,
    Sign.UNKNOWN: Sign.UNKNOWN,
}
_NEGATIVE_SIDE = {Sign.NEGATIVE, Sign.NONPOSITIVE}
_STRICT_NONZERO = {Sign.POSITIVE, Sign.NEGATIVE}


def _fraction_sign(q):
    if q > 0:
        return Sign.POSITIVE
    if q < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


class Atom:
    """An indivisible constant symbol.

    kinds: ``param`` (arg: name), ``lnp`` (arg: prime), ``ln`` (arg: Coeff),
    ``exp`` (arg: Coeff), ``c2pi`` (ln(2*pi)).
    """

    __slots__ = ("kind", "arg", "key", "_hash")

    def __init__(self, kind, arg=None):
        self.kind = kind
        self.arg = arg
        if kind == "param":
            key = "p:" + arg
        elif kind == "lnp":
            key = "lnp:%d" % arg
        elif kind == "ln":
            key = "ln(" + arg.key + ")"
        elif kind == "exp":
            key = "exp(" + arg.key + ")"
        elif kind == "c2pi":
            key = "c2pi"
        else:
            raise ValueError("unknown atom kind %r" % kind)
        self.key = key
        self._hash = hash(key)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return "Atom(%s)" % self.key

    def has_params(self):
        if self.kind == "param":
            return True
        if self.kind in ("ln", "exp"):
            return self.arg.has_params()
        return False

    def params(self):
        if self.kind == "param":
            return {self.arg}
        if self.kind in ("ln", "exp"):
            return self.arg.params()
        return set()

    def __str__(self):
        if self.kind == "param":
            return self.arg
        if self.kind == "lnp":
            return "ln(%d)" % self.arg
        if self.kind == "ln":
            return "ln(%s)" % self.arg
        if self.kind == "exp":
            return "exp(%s)" % self.arg
        return "ln(2*pi)"


# Monomials are tuples of (Atom, Fraction) sorted by atom key; polynomials are
# dicts mapping monomial -> nonzero Fraction.

_ONE_MONO = ()


def _is_prime_log_arg(arg):
    """True when ``arg`` is exactly ln(p) for a prime p."""
    if arg.den != ((_ONE_MONO, Fraction(1)),) or len(arg.num) != 1:
        return None
    mono, q = arg.num[0]
    if q != 1 or len(mono) != 1:
        return None
    atom, e = mono[0]
    if atom.kind == "lnp" and e == 1:
        return atom.arg
    return None


def _norm_mono(exps):
    """Canonicalize an atom->exponent dict; returns (rational factor, mono)."""
    factor = Fraction(1)
    items = []
    for atom, e in exps.items():
        if e == 0:
            continue
        if atom.kind == "exp":
            p = _is_prime_log_arg(atom.arg)
            if p is not None:
                n = math.floor(e)
                if n:
                    factor *= Fraction(p) ** n
                    e = e - n
                if e == 0:
                    continue
        items.append((atom, e))
    items.sort(key=lambda it: it[0].key)
    return factor, tuple(items)


def _mono_mul(m1, m2):
    if not m1:
        return Fraction(1), m2
    if not m2:
        return Fraction(1), m1
    exps = dict(m1)
    for atom, e in m2:
        exps[atom] = exps.get(atom, 0) + e
    return _norm_mono(exps)


def _mono_pow(m, q):
    return _norm_mono({atom: e * q for atom, e in m})


def _mono_key(m):
    return "*".join("%s^%s" % (a.key, e) for a, e in m)


def _padd(p1, p2):
    out = dict(p1)
    for m, q in p2.items():
        v = out.get(m, 0) + q
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pscale(p, q):
    if q == 0:
        return {}
    return {m: c * q for m, c in p.items()}


def _pmul(p1, p2):
    out = {}
    for m1, q1 in p1.items():
        for m2, q2 in p2.items():
            f, m = _mono_mul(m1, m2)
            v = out.get(m, 0) + q1 * q2 * f
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _pmul_mono(p, f, m):
    out = {}
    for m1, q1 in p.items():
        g, mm = _mono_mul(m1, m)
        v = out.get(mm, 0) + q1 * f * g
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _lex_vector(m, atoms):
    exps = dict(m)
    return tuple(exps.get(a, Fraction(0)) for a in atoms)


def _exact_divide(num, den, max_steps=64):
    """num/den as a polynomial when den divides num exactly, else None.

    Multivariate division under a lex order on atom exponents.  Laurent
    monomials make every leading-term step possible, so the step count is
    capped and the result is confirmed by multiplying back.
    """
    atoms = sorted({a for m in list(num) + list(den) for a, _ in m},
                   key=lambda a: a.key)

    def lead(p):
        return max(p.items(), key=lambda it: _lex_vector(it[0], atoms))

    dm, dq = lead(den)
    f, dm_inv = _mono_pow(dm, Fraction(-1))
    rest = dict(num)
    quotient = {}
    for _ in range(max_steps):
        if not rest:
            break
        rm, rq = lead(rest)
        g, qm = _mono_mul(rm, dm_inv)
        coeff = rq * f * g / dq
        quotient[qm] = quotient.get(qm, 0) + coeff
        rest = _padd(rest, _pmul_mono(den, -coeff, qm))
        # Any surviving term below every monomial of num cannot cancel.
        if rest and len(rest) > 4 * (len(num) + len(den)):
            return None
    else:
        return None
    if rest:
        return None
    quotient = {m: q for m, q in quotient.items() if q}
    if _padd(_pmul(quotient, den), _pscale(num, Fraction(-1))):
        return None
    return quotient


def _sorted_items(p):
    return tuple(sorted(p.items(), key=lambda it: _mono_key(it[0])))


def _poly_key(items):
    if not items:
        return "0"
    return "+".join("%s*[%s]" % (q, _mono_key(m)) for m, q in items)


_UNIT_DEN = ((_ONE_MONO, Fraction(1)),)


class Coeff:
    """Immutable exact constant ``num/den`` in canonical form."""

    __slots__ = ("num", "den", "key", "_hash")

    def __init__(self, num_items, den_items, key):
        self.num = num_items
        self.den = den_items
        self.key = key
        self._hash = hash(key)

    # -- construction -------------------------------------------------------

    @classmethod
    def _make(cls, num, den=None):
        num = {m: q for m, q in num.items() if q}
        if not num:
            return ZERO
        if den is None or den == {_ONE_MONO: Fraction(1)}:
            items = _sorted_items(num)
            return cls(items, _UNIT_DEN, _poly_key(items))
        if not den:
            raise ZeroDivisionError("constant denominator is exactly zero")
        if len(den) == 1:
            (m, q), = den.items()
            f, inv_m = _mono_pow(m, Fraction(-1))
            return cls._make(_pmul_mono(num, f / q, inv_m))
        quotient = _exact_divide(num, den)
        if quotient is not None:
            return cls._make(quotient)
        # Remove monomial content and make the denominator's leading
        # coefficient 1 so equal quotients get equal keys.
        atoms = set()
        for m in den:
            atoms.update(a for a, _ in m)
        content = {}
        for a in atoms:
            content[a] = min(dict(m).get(a, Fraction(0)) for m in den)
        if any(content.values()):
            f, g_inv = _norm_mono({a: -e for a, e in content.items()})
            num = _pmul_mono(num, f, g_inv)
            den = _pmul_mono(den, f, g_inv)
        den_items = _sorted_items(den)
        scale = 1 / _rational_content(den_items)
        if scale != 1:
            num = _pscale(num, scale)
            den = _pscale(den, scale)
            den_items = _sorted_items(den)
        if len(num) == len(den) and set(num) == set(den):
            m0 = den_items[0][0]
            k = num[m0] / den[m0]
            if all(num[m] == k * den[m] for m in den):
                return cls.const(k)
        num_items = _sorted_items(num)
        key = "(%s)/(%s)" % (_poly_key(num_items), _poly_key(den_items))
        return cls(num_items, den_items, key)

    @classmethod
    def const(cls, q):
        q = Fraction(q)
        if q == 0:
            return ZERO
        items = ((_ONE_MONO, q),)
        return cls(items, _UNIT_DEN, _poly_key(items))

    @classmethod
    def atom(cls, atom, exponent=1):
        f, m = _norm_mono({atom: Fraction(exponent)})
        return cls._make({m: f})

    @classmethod
    def param(cls, name):
        return cls.atom(Atom("param", name))

    @classmethod
    def e(cls):
        return cls.atom(Atom("exp", ONE))

    @classmethod
    def ln_2pi(cls):
        return cls.atom(Atom("c2pi"))

    # -- inspection ---------------------------------------------------------

    def _num_dict(self):
        return dict(self.num)

    def _den_dict(self):
        return dict(self.den)

    @property
    def is_polynomial(self):
        return self.den == _UNIT_DEN

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.key == ONE.key

    def rational(self):
        """The value as a Fraction when the constant is rational, else None."""
        if not self.num:
            return Fraction(0)
        if self.is_polynomial and len(self.num) == 1 and self.num[0][0] == _ONE_MONO:
            return self.num[0][1]
        return None

    def is_integer(self):
        q = self.rational()
        return q is not None and q.denominator == 1

    def monomial_terms(self):
        """Numerator terms as (Fraction, mono) pairs (denominator ignored)."""
        return [(q, m) for m, q in self.num]

    def has_params(self):
        for part in (self.num, self.den):
            for m, _ in part:
                for a, _ in m:
                    if a.has_params():
                        return True
        return False

    def params(self):
        out = set()
        for part in (self.num, self.den):
            for m, _ in part:
                for a, _ in m:
                    out |= a.params()
        return out

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rational() == other
        return isinstance(other, Coeff) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Coeff._make(_padd(self._num_dict(), other._num_dict()),
                               self._den_dict())
        d1, d2 = self._den_dict(), other._den_dict()
        num = _padd(_pmul(self._num_dict(), d2), _pmul(other._num_dict(), d1))
        return Coeff._make(num, _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        return Coeff._make(_pscale(self._num_dict(), Fraction(-1)),
                           self._den_dict())

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if other.is_one():
            return self
        if self.is_one():
            return other
        num = _pmul(self._num_dict(), other._num_dict())
        if self.is_polynomial and other.is_polynomial:
            return Coeff._make(num)
        return Coeff._make(num, _pmul(self._den_dict(), other._den_dict()))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of exact zero constant")
        return Coeff._make(self._den_dict(), self._num_dict())

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("Coeff powers must be integers; use exp/ln")
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- transcendental closure ----------------------------------------------

    def exp(self):
        """exp of the constant, kept in closed form."""
        if not self.num:
            return ONE
        if not self.is_polynomial:
            return Coeff.atom(Atom("exp", self))
        out = ONE
        for m, q in self.num:
            out = out * _exp_term(q, m)
        return out

    def ln(self, assumptions=None):
        """ln of the constant; requires it to be provably positive."""
        s = sign_of(self, assumptions)
        if s in (Sign.ZERO,):
            raise UndefinedAtPoint("ln of zero")
        if s in (Sign.NEGATIVE, Sign.NONPOSITIVE):
            raise UndefinedAtPoint("ln of negative constant %s" % self)
        if s is not Sign.POSITIVE:
            raise AssumptionNeeded("%s > 0" % self)
        if self.is_one():
            return ZERO
        if not self.is_polynomial:
            num = Coeff._make(self._num_dict())
            den = Coeff._make(self._den_dict())
            if sign_of(den, assumptions) is Sign.POSITIVE:
                return num.ln(assumptions) - den.ln(assumptions)
            return Coeff.atom(Atom("ln", self))
        if len(self.num) == 1:
            m, q = self.num[0]
            if q > 0 and all(_atom_sign(a, assumptions) is Sign.POSITIVE
                             for a, _ in m):
                return _ln_rational(q) + _ln_mono(m)
            return Coeff.atom(Atom("ln", self))
        # Pull out rational and monomial content, keep the primitive part.
        content_q = _rational_content(self.num)
        atoms = set()
        for m, _ in self.num:
            atoms.update(a for a, _ in m)
        content_m = {a: min(dict(m).get(a, Fraction(0)) for m, _ in self.num)
                     for a in atoms}
        f, cm = _norm_mono(content_m)
        _, cm_inv = _mono_pow(cm, Fraction(-1))
        prim = _pmul_mono(_pscale(self._num_dict(), 1 / content_q), 1 / f, cm_inv)
        prim_c = Coeff._make(prim)
        if (content_q * f > 0
                and all(_atom_sign(a, assumptions) is Sign.POSITIVE for a, _ in cm)
                and sign_of(prim_c, assumptions) is Sign.POSITIVE):
            out = _ln_rational(content_q * f) + _ln_mono(cm)
            if not prim_c.is_one():
                out = out + Coeff.atom(Atom("ln", prim_c))
            return out
        return Coeff.atom(Atom("ln", self))

    # -- numerics -------------------------------------------------------------

    def interval(self, bindings=None):
        """Rigorous mpmath interval enclosure of the value."""
        return _iv_poly(self.num, bindings) / _iv_poly(self.den, bindings)

    def evaluate(self, bindings=None):
        """Floating (mpmath) value; used by numeric oracles only."""
        return _mp_poly(self.num, bindings) / _mp_poly(self.den, bindings)

    # -- display --------------------------------------------------------------

    def __str__(self):
        num = _poly_str(self.num)
        if self.is_polynomial:
            return num
        den = _poly_str(self.den)
        if len(self.num) > 1:
            num = "(%s)" % num
        return "%s/(%s)" % (num, den)

    def __repr__(self):
        return "Coeff(%s)" % self


def _coerce(x):
    if isinstance(x, Coeff):
        return x
    if isinstance(x, (int, Fraction)):
        return Coeff.const(x)
    return None


def _rational_content(items):
    nums = [q.numerator for _, q in items]
    dens = [q.denominator for _, q in items]
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    lcm = 1
    for d in dens:
        lcm = lcm * d // math.gcd(lcm, d)
    content = Fraction(g, lcm)
    if items and items[0][1] < 0:
        content = -content
    return content


def _exp_term(q, m):
    """exp(q * m) for a single constant monomial m."""
    if not m:
        return Coeff.atom(Atom("exp", ONE), q)
    if len(m) == 1 and m[0][1] == 1:
        atom = m[0][0]
        if atom.kind == "ln":
            arg = atom.arg
            if q.denominator == 1:
                return arg ** int(q)
            if arg.is_polynomial and len(arg.num) == 1 and arg.num[0][1] == 1:
                (am,) = [arg.num[0][0]]
                if len(am) == 1:
                    inner, e = am[0]
                    return Coeff.atom(inner, e * q)
        if atom.kind == "lnp" and q.denominator == 1:
            return Coeff.const(Fraction(atom.arg) ** int(q))
    unit = Coeff._make({m: Fraction(1)})
    return Coeff.atom(Atom("exp", unit), q)


def factor_rational(n):
    """Prime factorization of a positive integer as {prime: multiplicity}.

    Trial division up to 10**6; an unfactored remainder is kept whole.
    """
    out = {}
    d = 2
    while d * d <= n and d <= 10 ** 6:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _ln_rational(q):
    out = ZERO
    for p, k in factor_rational(q.numerator).items():
        out = out + Coeff.atom(Atom("lnp", p)) * k
    for p, k in factor_rational(q.denominator).items():
        out = out - Coeff.atom(Atom("lnp", p)) * k
    return out


def _ln_atom(atom):
    if atom.kind == "exp":
        return atom.arg
    return Coeff.atom(Atom("ln", Coeff.atom(atom)))


def _ln_mono(m):
    out = ZERO
    for atom, e in m:
        out = out + _ln_atom(atom) * Coeff.const(e)
    return out


# -- signs ----------------------------------------------------------------------


def _atom_sign(atom, assumptions):
    if atom.kind == "param":
        if assumptions is None:
            return Sign.POSITIVE
        return assumptions.param_sign(atom.arg)
    if atom.kind == "ln":
        return sign_of(atom.arg - 1, assumptions)
    return Sign.POSITIVE


def _mono_sign(m, assumptions):
    out = Sign.POSITIVE
    for atom, e in m:
        s = _atom_sign(atom, assumptions)
        if e.denominator != 1:
            if s is not Sign.POSITIVE:
                return Sign.UNKNOWN
            continue
        if e.numerator % 2 == 0:
            if s in _STRICT_NONZERO:
                s = Sign.POSITIVE
            elif s in (Sign.NONNEGATIVE, Sign.NONPOSITIVE):
                s = Sign.NONNEGATIVE
        out = out * s
    return out


def _term_signs(poly_items, assumptions):
    total = Sign.ZERO
    for m, q in poly_items:
        total = total + _fraction_sign(q) * _mono_sign(m, assumptions)
        if total is Sign.UNKNOWN:
            return total
    return total


_REL_SIGN = {
    ">": Sign.POSITIVE,
    "<": Sign.NEGATIVE,
    "=": Sign.ZERO,
    ">=": Sign.NONNEGATIVE,
    "<=": Sign.NONPOSITIVE,
}


def _poly_sign(items, assumptions):
    if not items:
        return Sign.ZERO
    params = any(a.has_params() for m, _ in items for a, _ in m)
    if not params:
        s = _interval_sign(items)
        if s is not Sign.UNKNOWN:
            return s
    s = _term_signs(items, assumptions)
    if s in _STRICT_NONZERO or assumptions is None:
        return s
    poly = dict(items)
    best = s
    for g, rel in assumptions.constraints_poly():
        s_g = _REL_SIGN[rel]
        for m, gq in g.items():
            if m not in poly:
                continue
            lam = poly[m] / gq
            rest = _padd(poly, _pscale(g, -lam))
            s_rest = _term_signs(_sorted_items(rest), assumptions)
            total = _fraction_sign(lam) * s_g + s_rest
            if total in _STRICT_NONZERO or total is Sign.ZERO:
                return total
            if best is Sign.UNKNOWN and total is not Sign.UNKNOWN:
                best = total
    return best


def _interval_sign(items):
    saved = iv.prec
    iv.prec = 160
    try:
        v = _iv_poly(items, None)
    except (KeyError, ValueError, ZeroDivisionError):
        return Sign.UNKNOWN
    finally:
        iv.prec = saved
    if v.a > 0:
        return Sign.POSITIVE
    if v.b < 0:
        return Sign.NEGATIVE
    return Sign.UNKNOWN


def sign_of(c, assumptions=None):
    """Sign of a constant under the given assumptions (may be UNKNOWN)."""
    if isinstance(c, (int, Fraction)):
        return _fraction_sign(Fraction(c))
    if not c.num:
        return Sign.ZERO
    q = c.rational()
    if q is not None:
        return _fraction_sign(q)
    s_num = _poly_sign(c.num, assumptions)
    if c.is_polynomial:
        return s_num
    s_den = _poly_sign(c.den, assumptions)
    if s_den in (Sign.NONNEGATIVE, Sign.NONPOSITIVE):
        s_den = Sign.UNKNOWN
    return s_num * s_den


# -- numerics -------------------------------------------------------------------


def _iv_atom(atom, bindings):
    if atom.kind == "param":
        if bindings is None or atom.arg not in bindings:
            raise KeyError(atom.arg)
        return iv.mpf(bindings[atom.arg])
    if atom.kind == "lnp":
        return iv.log(atom.arg)
    if atom.kind == "ln":
        return iv.log(atom.arg.interval(bindings))
    if atom.kind == "exp":
        return iv.exp(atom.arg.interval(bindings))
    return iv.log(2 * iv.pi)


def _iv_pow(x, e):
    if e.denominator == 1:
        return x ** int(e)
    return iv.exp(iv.mpf(e.numerator) / e.denominator * iv.log(x))


def _iv_poly(items, bindings):
    total = iv.mpf(0)
    for m, q in items:
        term = iv.mpf(q.numerator) / q.denominator
        for atom, e in m:
            term = term * _iv_pow(_iv_atom(atom, bindings), e)
        total = total + term
    return total


def _mp_atom(atom, bindings):
    if atom.kind == "param":
        return mp.mpf(bindings[atom.arg])
    if atom.kind == "lnp":
        return mp.log(atom.arg)
    if atom.kind == "ln":
        return mp.log(atom.arg.evaluate(bindings))
    if atom.kind == "exp":
        return mp.exp(atom.arg.evaluate(bindings))
    return mp.log(2 * mp.pi)


def _mp_poly(items, bindings):
    total = mp.mpf(0)
    for m, q in items:
        term = mp.mpf(q.numerator) / q.denominator
        for atom, e in m:
            term *= _mp_atom(atom, bindings) ** (mp.mpf(e.numerator) / e.denominator)
        total += term
    return total


# -- display --------------------------------------------------------------------


def _atom_power_str(atom, e):
    if atom.kind == "exp" and len(atom.arg.num) == 1 and atom.arg.is_polynomial:
        m, q = atom.arg.num[0]
        if q == 1 and len(m) == 1 and m[0][1] == 1 and m[0][0].kind in ("lnp", "ln", "c2pi"):
            inner = m[0][0]
            if inner.kind == "c2pi":
                return "(2*pi)^(%s)" % e
            base = str(inner.arg)
            if inner.kind == "ln" and not _simple_base(inner.arg):
                base = "(%s)" % base
            return "%s^(%s)" % (base, e) if e.denominator != 1 or e < 0 else "%s^%s" % (base, e)
    if atom.kind == "exp":
        inner = atom.arg * Coeff.const(e)
        return "exp(%s)" % inner
    base = str(atom)
    if e == 1:
        return base
    if e.denominator == 1 and e > 0:
        return "%s^%d" % (base, e.numerator)
    return "%s^(%s)" % (base, e)


def _simple_base(c):
    return c.is_polynomial and len(c.num) == 1 and c.num[0][1] == 1 and len(c.num[0][0]) == 1 \
        and c.num[0][0][0][1] == 1


def _term_str(q, m):
    ups = [_atom_power_str(a, e) for a, e in m if e > 0 or a.kind == "exp"]
    downs = [_atom_power_str(a, -e) for a, e in m if e < 0 and a.kind != "exp"]
    sign = "-" if q < 0 else ""
    q = abs(q)
    if q.denominator != 1:
        downs.insert(0, str(q.denominator))
    parts = ([str(q.numerator)] if q.numerator != 1 or not ups else []) + ups
    body = "*".join(parts)
    if len(downs) == 1:
        body += "/" + downs[0]
    elif downs:
        body += "/(" + "*".join(downs) + ")"
    return sign, body


def _poly_str(items):
    if not items:
        return "0"
    # constants last, like the expression printer
    ordered = sorted(items, key=lambda it: (it[0] == _ONE_MONO, _mono_key(it[0])))
    out = ""
    for i, (m, q) in enumerate(ordered):
        sign, body = _term_str(q, m)
        if i == 0:
            out = sign + body
        else:
            out += (" - " if sign else " + ") + body
    return out


ZERO = Coeff((), _UNIT_DEN, "0")
ONE = Coeff(((_ONE_MONO, Fraction(1)),), _UNIT_DEN, _poly_key(((_ONE_MONO, Fraction(1)),)))
