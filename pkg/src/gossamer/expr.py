"""Expressions in one main variable: parse, print, differentiate, substitute.

Every node is built through the smart constructors below (``add``, ``mul``,
``div``, ``ln``, ``exp``, ``power``, ``fact``), which keep the tree in normal
form.  ``Pow`` never survives construction: integer exponents become repeated
products (or a reciprocal of one), everything else becomes ``exp(e*ln(b))``.
"""

import math
import re
from fractions import Fraction

from .coeff import Coeff, Sign
from .errors import (DivisionByExactZero, FactorialDomainError, GossamerError,
                     ParseError)

__all__ = [
    "Expr", "Const", "Param", "Var", "Add", "Mul", "Div", "Ln", "Exp", "Fact",
    "const", "add", "sub", "neg", "mul", "div", "ln", "exp", "power", "fact",
    "parse", "to_string", "differentiate", "substitute", "free_var",
    "contains_var", "contains_fact", "to_coeff", "Point", "Assumptions",
    "to_infinity", "E", "identifiers", "params_of",
]

# Integer powers up to this size are written as repeated products.
_MAX_UNROLL = 16

_RANK = {"const": 0, "param": 1, "var": 2, "fact": 3, "ln": 4, "exp": 5,
         "add": 6, "mul": 7, "div": 8}


class Expr:
    __slots__ = ("args", "key", "_hash")
    kind = None

    def __init__(self, args, key):
        self.args = args
        self.key = key
        self._hash = hash(key)

    def __eq__(self, other):
        return isinstance(other, Expr) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, to_string(self))

    def __str__(self):
        return to_string(self)

    # operator sugar, always normalizing
    def __add__(self, other):
        return add(self, _lift(other))

    def __radd__(self, other):
        return add(_lift(other), self)

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __mul__(self, other):
        return mul(self, _lift(other))

    def __rmul__(self, other):
        return mul(_lift(other), self)

    def __truediv__(self, other):
        return div(self, _lift(other))

    def __rtruediv__(self, other):
        return div(_lift(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, other):
        return power(self, _lift(other))


class Const(Expr):
    __slots__ = ()
    kind = "const"

    def __init__(self, value):
        value = Fraction(value)
        super().__init__((value,), "c:%s" % value)

    @property
    def value(self):
        return self.args[0]


class Param(Expr):
    __slots__ = ()
    kind = "param"

    def __init__(self, name):
        super().__init__((name,), "p:" + name)

    @property
    def name(self):
        return self.args[0]


class Var(Expr):
    __slots__ = ()
    kind = "var"

    def __init__(self, name="x"):
        super().__init__((name,), "v:" + name)

    @property
    def name(self):
        return self.args[0]


def _node(cls, args):
    key = "%s(%s)" % (cls.kind, ",".join(a.key for a in args))
    return cls(args, key)


class Add(Expr):
    __slots__ = ()
    kind = "add"


class Mul(Expr):
    __slots__ = ()
    kind = "mul"


class Div(Expr):
    __slots__ = ()
    kind = "div"

    @property
    def num(self):
        return self.args[0]

    @property
    def den(self):
        return self.args[1]


class Ln(Expr):
    __slots__ = ()
    kind = "ln"

    @property
    def arg(self):
        return self.args[0]


class Exp(Expr):
    __slots__ = ()
    kind = "exp"

    @property
    def arg(self):
        return self.args[0]


class Fact(Expr):
    __slots__ = ()
    kind = "fact"

    @property
    def arg(self):
        return self.args[0]


ZERO = Const(0)
ONE = Const(1)
E = _node(Exp, (ONE,))


def const(q):
    return Const(q)


def _lift(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(x)
    raise TypeError("cannot use %r in an expression" % (x,))


# -- ordering helpers -----------------------------------------------------------


def _degree(e):
    """Rough growth weight, used only to order terms for display."""
    k = e.kind
    if k in ("const", "param"):
        return 0
    if k == "var":
        return 1
    if k == "mul":
        return sum(_degree(a) for a in e.args)
    if k == "div":
        return _degree(e.num) - _degree(e.den)
    if k == "add":
        return max(_degree(a) for a in e.args)
    if k == "ln":
        return 0.5 if contains_var(e) else 0
    if k == "exp":
        if not contains_var(e):
            return 0
        d = _degree(e.arg)
        return 1000 if d >= 1 else d * 2
    return 500


def _term_sort_key(core):
    return (-_degree(core), core.key)


def _factor_sort_key(f):
    return (_RANK[f.kind], f.key)


# -- smart constructors -----------------------------------------------------------


def _split_coeff(t):
    """Split a term into (rational coefficient, core)."""
    if t.kind == "const":
        return t.value, ONE
    if t.kind == "mul" and t.args[0].kind == "const":
        rest = t.args[1:]
        core = rest[0] if len(rest) == 1 else _node(Mul, rest)
        return t.args[0].value, core
    if t.kind == "div":
        n = t.num
        if n.kind == "add":
            c, _ = _split_coeff(n.args[0])
            if c != 1:
                return c, _node(Div, (_scale_add(n, 1 / c), t.den))
            return Fraction(1), t
        c, ncore = _split_coeff(n)
        if c != 1:
            return c, _node(Div, (ncore, t.den))
    return Fraction(1), t


def _scale_add(a, c):
    return add(*[_scale(c, t) for t in a.args])


def _scale(c, core):
    if c == 1:
        return core
    if core.kind == "const":
        return Const(core.value * c)
    if core.kind == "div":
        n = core.num
        if n.kind == "add":
            return _node(Div, (_scale_add(n, c), core.den))
        return _node(Div, (_scale(c, n), core.den))
    if core.kind == "mul":
        if core.args[0].kind == "const":
            return _scale(c * core.args[0].value, _node(Mul, core.args[1:])
                          if len(core.args) > 2 else core.args[1])
        return _node(Mul, (Const(c),) + core.args)
    if core.kind == "add":
        return _scale_add(core, c)
    return _node(Mul, (Const(c), core))


def add(*terms):
    flat = []
    for t in terms:
        t = _lift(t)
        if t.kind == "add":
            flat.extend(t.args)
        else:
            flat.append(t)
    total = Fraction(0)
    cores = {}
    for t in flat:
        if t.kind == "const":
            total += t.value
            continue
        c, core = _split_coeff(t)
        slot = cores.get(core.key)
        if slot is None:
            cores[core.key] = [core, c]
        else:
            slot[1] += c
    out = []
    for core, c in sorted(cores.values(), key=lambda s: _term_sort_key(s[0])):
        if c != 0:
            out.append(_scale(c, core))
    if total != 0:
        out.append(Const(total))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return _node(Add, tuple(out))


def neg(a):
    return mul(Const(-1), a)


def sub(a, b):
    return add(a, neg(_lift(b)))


def _mul_plain(factors):
    """Product of non-Add, non-Div, non-Const factors (sorted)."""
    return sorted(factors, key=_factor_sort_key)


def _build_mul(c, factors):
    if c == 0:
        return ZERO
    if not factors:
        return Const(c)
    factors = tuple(_mul_plain(factors))
    if c == 1 and len(factors) == 1:
        return factors[0]
    if c != 1:
        factors = (Const(c),) + factors
    return _node(Mul, factors)


def mul(*factors):
    flat = []
    for f in factors:
        f = _lift(f)
        if f.kind == "mul":
            flat.extend(f.args)
        else:
            flat.append(f)
    c = Fraction(1)
    plain = []
    nums, dens, sums = [], [], []
    for f in flat:
        if f.kind == "const":
            c *= f.value
        elif f.kind == "div":
            nums.append(f.num)
            dens.append(f.den)
        elif f.kind == "add":
            sums.append(f)
        else:
            plain.append(f)
    if c == 0:
        return ZERO
    if dens:
        return div(mul(Const(c), *plain, *sums, *nums), mul(*dens))
    if not sums:
        return _build_mul(c, plain)
    # distribute, one sum at a time so like terms collapse as we go
    acc_expr = _build_mul(c, plain)
    for s in sums:
        acc_expr = add(*[_mul_pair(acc_expr, t) for t in s.args])
    return acc_expr


def _mul_pair(a, b):
    if a.kind == "add":
        return add(*[_mul_pair(t, b) for t in a.args])
    return mul(a, b)


def _const_and_factors(e):
    if e.kind == "const":
        return e.value, []
    if e.kind == "mul":
        if e.args[0].kind == "const":
            return e.args[0].value, list(e.args[1:])
        return Fraction(1), list(e.args)
    return Fraction(1), [e]


def div(n, d):
    n, d = _lift(n), _lift(d)
    if d.kind == "const":
        if d.value == 0:
            raise DivisionByExactZero("division by exact zero")
        return mul(n, Const(1 / d.value))
    if n.kind == "const" and n.value == 0:
        return ZERO
    if n.kind == "div":
        return div(n.num, mul(n.den, d))
    if d.kind == "div":
        return div(mul(n, d.den), d.num)
    nc, nf = _const_and_factors(n)
    dc, df = _const_and_factors(d)
    remaining = list(df)
    kept = []
    for f in nf:
        for i, g in enumerate(remaining):
            if g.key == f.key:
                del remaining[i]
                break
        else:
            kept.append(f)
    if not remaining:
        return mul(Const(nc / dc), *kept)
    if len(kept) == 1 and kept[0].kind == "add":
        num = mul(Const(nc), kept[0]) if nc != 1 else kept[0]
        den_c = dc
        if den_c < 0:
            num, den_c = neg(num), -den_c
        den = _build_mul(den_c, remaining)
        if num.kind != "add":
            return div(num, den)
        if den.kind == "const":
            return mul(num, Const(1 / den.value))
        return _node(Div, (num, den))
    num = mul(Const(nc / dc), *kept)
    den = _build_mul(Fraction(1), remaining)
    if num.kind == "div":
        return div(num, den)
    return _node(Div, (num, den))


def ln(u):
    u = _lift(u)
    if u.kind == "const":
        if u.value == 1:
            return ZERO
    if u.kind == "exp":
        return u.arg
    return _node(Ln, (u,))


def exp(u):
    u = _lift(u)
    if u.kind == "const" and u.value == 0:
        return ONE
    if u.kind == "ln":
        return u.arg
    if u.kind == "mul" and len(u.args) == 2 and u.args[0].kind == "const" \
            and u.args[1].kind == "ln":
        q = u.args[0].value
        if q.denominator == 1 and abs(q) <= _MAX_UNROLL:
            return _int_power(u.args[1].arg, int(q))
    return _node(Exp, (u,))


def _int_power(b, n):
    if n == 0:
        return ONE
    if n < 0:
        return div(ONE, _int_power(b, -n))
    acc = b
    for _ in range(n - 1):
        acc = mul(acc, b)
    return acc


def power(b, e):
    b, e = _lift(b), _lift(e)
    if e.kind == "const":
        q = e.value
        if q.denominator == 1 and abs(q) <= _MAX_UNROLL:
            return _int_power(b, int(q))
        if b.kind == "const" and q.denominator == 1:
            if b.value == 0 and q < 0:
                raise DivisionByExactZero("zero to a negative power")
            return Const(b.value ** int(q))
    if b.kind == "exp":
        return exp(mul(e, b.arg))
    if b.kind == "const" and b.value == 1:
        return ONE
    return exp(mul(e, ln(b)))


def fact(u):
    u = _lift(u)
    if u.kind == "const":
        q = u.value
        if q.denominator == 1 and q >= 0:
            return Const(math.factorial(int(q)))
        raise FactorialDomainError("fact of %s is outside the supported domain" % q)
    if u.kind == "var":
        return _node(Fact, (u,))
    if u.kind == "add" and len(u.args) == 2 and u.args[0].kind == "var" \
            and u.args[1].kind == "const":
        return _node(Fact, (u,))
    raise FactorialDomainError(
        "fact argument must be the main variable plus a rational constant, got %s"
        % to_string(u))


# -- traversal ----------------------------------------------------------------------


def contains_var(e):
    if e.kind == "var":
        return True
    if e.kind in ("const", "param"):
        return False
    return any(contains_var(a) for a in e.args)


def contains_fact(e):
    if e.kind == "fact":
        return True
    if e.kind in ("const", "param", "var"):
        return False
    return any(contains_fact(a) for a in e.args)


def free_var(e):
    """Name of the main variable appearing in e, or None."""
    if e.kind == "var":
        return e.name
    if e.kind in ("const", "param"):
        return None
    for a in e.args:
        v = free_var(a)
        if v is not None:
            return v
    return None


def params_of(e):
    if e.kind == "param":
        return {e.name}
    if e.kind in ("const", "var"):
        return set()
    out = set()
    for a in e.args:
        out |= params_of(a)
    return out


def rebuild(e, args):
    k = e.kind
    if k == "add":
        return add(*args)
    if k == "mul":
        return mul(*args)
    if k == "div":
        return div(*args)
    if k == "ln":
        return ln(args[0])
    if k == "exp":
        return exp(args[0])
    if k == "fact":
        return fact(args[0])
    raise ValueError(k)


def substitute(e, replacement, params=None):
    """Replace the main variable by ``replacement``; optionally replace
    parameters via the ``params`` mapping name -> Expr."""
    cache = {}

    def walk(node):
        k = node.kind
        if k == "var":
            return replacement if replacement is not None else node
        if k == "const":
            return node
        if k == "param":
            if params and node.name in params:
                return params[node.name]
            return node
        hit = cache.get(node.key)
        if hit is not None:
            return hit
        out = rebuild(node, [walk(a) for a in node.args])
        cache[node.key] = out
        return out

    return walk(e)


def differentiate(e):
    """Derivative with respect to the main variable."""
    cache = {}

    def d(node):
        k = node.kind
        if k in ("const", "param"):
            return ZERO
        if k == "var":
            return ONE
        hit = cache.get(node.key)
        if hit is not None:
            return hit
        if k == "add":
            out = add(*[d(a) for a in node.args])
        elif k == "mul":
            parts = []
            args = node.args
            for i, a in enumerate(args):
                da = d(a)
                if da.kind == "const" and da.value == 0:
                    continue
                parts.append(mul(*(args[:i] + (da,) + args[i + 1:])))
            out = add(*parts)
        elif k == "div":
            n, dd = node.num, node.den
            out = div(sub(mul(d(n), dd), mul(n, d(dd))), mul(dd, dd))
        elif k == "ln":
            out = div(d(node.arg), node.arg)
        elif k == "exp":
            out = mul(node, d(node.arg))
        else:
            raise FactorialDomainError(
                "cannot differentiate fact(); expand it with Stirling first")
        cache[node.key] = out
        return out

    return d(e)


def to_coeff(e):
    """Convert a variable-free expression to an exact constant."""
    k = e.kind
    if k == "const":
        return Coeff.const(e.value)
    if k == "param":
        return Coeff.param(e.name)
    if k == "var":
        raise GossamerError("expression depends on the main variable")
    if k == "add":
        out = Coeff.const(0)
        for a in e.args:
            out = out + to_coeff(a)
        return out
    if k == "mul":
        out = Coeff.const(1)
        for a in e.args:
            out = out * to_coeff(a)
        return out
    if k == "div":
        return to_coeff(e.num) / to_coeff(e.den)
    if k == "ln":
        return to_coeff(e.arg).ln()
    if k == "exp":
        return to_coeff(e.arg).exp()
    raise GossamerError("cannot convert %s to a constant" % to_string(e))


# -- printing -----------------------------------------------------------------------

_ATOM = 5


def to_string(e, fmt="plain"):
    """Render in the input grammar (``plain``) or with ln_k shorthand
    (``landau``, display only)."""
    return _p(e, fmt)


def _const_str(q):
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _wrap(s):
    return "(" + s + ")"


def _is_atomic(e):
    if e.kind == "const":
        return e.value.denominator == 1 and e.value >= 0
    if e.kind in ("param", "var", "ln", "fact"):
        return True
    if e.kind == "exp":
        return _pow_form(e) is None
    return False


def _pow_form(e):
    """(base, exponent) when exp(u) reads naturally as base^exponent."""
    u = e.arg
    den = None
    if u.kind == "div":
        u, den = u.num, u.den
    if u.kind == "ln":
        factors = (u,)
    elif u.kind == "mul":
        factors = u.args
    else:
        return None
    logs = [i for i, f in enumerate(factors) if f.kind == "ln"]
    if not logs:
        return None
    i = min(logs, key=lambda j: (_depth(factors[j].arg), factors[j].key))
    rest = factors[:i] + factors[i + 1:]
    if not rest:
        expo = ONE
    elif len(rest) == 1:
        expo = rest[0]
    else:
        expo = _node(Mul, rest)
    if den is not None:
        expo = div(expo, den)
    return factors[i].arg, expo


def _depth(e):
    if e.kind in ("const", "param", "var"):
        return 0
    return 1 + max(_depth(a) for a in e.args)


def _iter_log(e):
    depth = 0
    while e.kind == "ln":
        depth += 1
        e = e.arg
    return depth, e


def _p(e, fmt):
    k = e.kind
    if k == "const":
        return _const_str(e.value)
    if k in ("param", "var"):
        return e.name
    if k == "add":
        out = []
        for i, t in enumerate(e.args):
            c, core = _split_coeff(t)
            if c < 0:
                body = _p(_scale(-c, core), fmt)
                out.append(("-" if i == 0 else " - ") + _neg_safe(body, _scale(-c, core)))
            else:
                out.append(("" if i == 0 else " + ") + _p(t, fmt))
        return "".join(out)
    if k == "mul":
        return _mul_str(e.args, fmt)
    if k == "div":
        n, d = e.num, e.den
        ns = _p(n, fmt)
        if n.kind == "add":
            ns = _wrap(ns)
        ds = _p(d, fmt)
        if not (_is_atomic(d) or _is_power_factor(d)
                or (d.kind == "exp" and _pow_form(d) is not None)):
            ds = _wrap(ds)
        return ns + "/" + ds
    if k == "ln":
        if fmt == "landau":
            depth, inner = _iter_log(e)
            if depth > 1:
                return "ln_%d(%s)" % (depth, _p(inner, fmt))
        return "ln(" + _p(e.arg, fmt) + ")"
    if k == "exp":
        if e.arg.kind == "const" and e.arg.value == 1:
            return "e"
        pf = _pow_form(e)
        if pf is not None:
            base, expo = pf
            bs = _p(base, fmt)
            if not _is_atomic(base):
                bs = _wrap(bs)
            es = _p(expo, fmt)
            if not (_is_atomic(expo) and expo.kind != "exp"):
                es = _wrap(es)
            return bs + "^" + es
        return "exp(" + _p(e.arg, fmt) + ")"
    if k == "fact":
        return "fact(" + _p(e.arg, fmt) + ")"
    raise ValueError(k)


def _neg_safe(body, e):
    # after a minus sign the body must bind at least as tightly as a term
    if e.kind == "add":
        return _wrap(body)
    return body


def _is_power_factor(e):
    return e.kind == "mul" and len(e.args) > 1 and all(
        a.key == e.args[0].key for a in e.args) and _is_atomic(e.args[0])


def _mul_str(args, fmt):
    parts = []
    start = 0
    prefix = ""
    if args[0].kind == "const":
        q = args[0].value
        start = 1
        if q == -1:
            prefix = "-"
        elif q != 1:
            if q < 0:
                prefix = "-"
                q = -q
            if q != 1:
                parts.append(_const_str(q))
    groups = []
    for f in args[start:]:
        if groups and groups[-1][0].key == f.key:
            groups[-1][1] += 1
        else:
            groups.append([f, 1])
    for f, n in groups:
        s = _p(f, fmt)
        if n > 1:
            if not _is_atomic(f):
                s = _wrap(s)
            parts.append("%s^%d" % (s, n))
        else:
            if f.kind in ("add", "div"):
                s = _wrap(s)
            parts.append(s)
    return prefix + "*".join(parts)


# -- parsing ------------------------------------------------------------------------

_FUNCS = {"ln", "exp", "fact"}
_RESERVED = _FUNCS | {"e"}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<id>[A-Za-z][A-Za-z0-9_]*)"
                    r"|(?P<op>[-+*/^(),]))")


def _tokenize(text):
    pos = 0
    toks = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected character %r" % text[pos], pos,
                             ("number", "identifier", "operator"))
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, var, params):
        self.toks = _tokenize(text)
        self.i = 0
        self.var = var
        self.params = params

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value or t[0] == "end":
            raise ParseError("expected %r" % value, t[2], (value,))
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected %r" % t[1], t[2],
                             ("+", "-", "*", "/", "^", "end of input"))
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            r = self.term()
            e = add(e, r) if op == "+" else sub(e, r)
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            r = self.unary()
            if op == "*":
                e = mul(e, r)
            else:
                try:
                    e = div(e, r)
                except DivisionByExactZero:
                    raise ParseError("division by exact zero", pos, ())
        return e

    def unary(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return neg(self.factor())
        return self.factor()

    def factor(self):
        b = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            pos = self.take()[2]
            x = self.unary()
            try:
                return power(b, x)
            except DivisionByExactZero:
                raise ParseError("zero raised to a negative power", pos, ())
        return b

    def base(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Const(Fraction(text))
        if kind == "id":
            if text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if text == "ln":
                    return ln(arg)
                if text == "exp":
                    return exp(arg)
                return fact(arg)
            if text == "e":
                return E
            if text == self.var:
                return Var(text)
            return Param(text)
        if kind == "op" and text == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError("unexpected %s" % (repr(text) if text else "end of input"),
                         pos, ("number", "identifier", "(", "ln", "exp", "fact"))


def identifiers(text):
    """Non-reserved identifiers used in text, in order of first use."""
    seen = []
    toks = _tokenize(text)
    for j, (kind, val, _) in enumerate(toks):
        if kind != "id" or val in _RESERVED:
            continue
        if val not in seen:
            seen.append(val)
    return seen


def parse(text, var=None, params=()):
    """Parse text into a normalized expression.

    ``var`` names the main variable; when omitted it is the single identifier
    not listed in ``params``.  With ``var`` given, every other identifier is
    a parameter.
    """
    params = set(params)
    if var is None:
        free = [n for n in identifiers(text) if n not in params]
        if len(free) > 1:
            raise ParseError("more than one undeclared identifier (%s); declare "
                             "parameters" % ", ".join(free), 0, ("parameter declaration",))
        var = free[0] if free else "x"
    return _Parser(text, var, params).parse()


# -- points -------------------------------------------------------------------------


class Point:
    """Where an expression is evaluated: main variable to +inf, or to a
    finite rational from one or both sides (0+ and 0- included)."""

    __slots__ = ("kind", "value", "side")

    def __init__(self, kind, value=Fraction(0), side="both"):
        if kind not in ("inf", "finite"):
            raise ValueError("unknown point kind %r" % kind)
        if side not in ("plus", "minus", "both"):
            raise ValueError("unknown side %r" % side)
        self.kind = kind
        self.value = Fraction(value)
        self.side = side if kind == "finite" else "plus"

    @classmethod
    def infinity(cls):
        return cls("inf")

    @classmethod
    def zero_plus(cls):
        return cls("finite", 0, "plus")

    @classmethod
    def zero_minus(cls):
        return cls("finite", 0, "minus")

    @classmethod
    def finite(cls, a, side="both"):
        return cls("finite", a, side)

    @property
    def is_infinity(self):
        return self.kind == "inf"

    def __eq__(self, other):
        return (isinstance(other, Point) and self.kind == other.kind
                and self.value == other.value and self.side == other.side)

    def __hash__(self):
        return hash((self.kind, self.value, self.side))

    def __repr__(self):
        return "Point(%s)" % self

    def __str__(self):
        if self.kind == "inf":
            return "inf"
        s = _const_str(self.value)
        return s + {"plus": "+", "minus": "-", "both": ""}[self.side]

    @classmethod
    def parse(cls, text):
        """Parse ``x=inf``, ``x=0+``, ``x=2-``, ``x=1/2`` into (name, Point)."""
        m = re.fullmatch(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*(\S+)\s*", text)
        if not m:
            raise ParseError("point must look like VAR=VALUE", 0, ("VAR=VALUE",))
        name, val = m.group(1), m.group(2)
        if val in ("inf", "oo", "+inf", "infinity"):
            return name, cls.infinity()
        side = "both"
        if val.endswith("+"):
            side, val = "plus", val[:-1]
        elif val.endswith("-") and len(val) > 1:
            side, val = "minus", val[:-1]
        try:
            q = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad point value %r" % val, text.index("=") + 1,
                             ("inf", "rational"))
        return name, cls.finite(q, side)


def to_infinity(e, point, var="x"):
    """Rewrite e so that the point becomes main variable -> +inf.

    Returns a list of (side, expression) pairs: one for infinity or a one-sided
    approach, two for a two-sided finite point.
    """
    if point.is_infinity:
        return [("inf", e)]
    t = Var(free_var(e) or var)
    sides = ["plus", "minus"] if point.side == "both" else [point.side]
    out = []
    for side in sides:
        step = div(ONE, t)
        if side == "minus":
            step = neg(step)
        out.append((side, substitute(e, add(Const(point.value), step))))
    return out


# -- assumptions --------------------------------------------------------------------

_REL_RE = re.compile(r"(<=|>=|=|<|>)")
_FLIP = {">": "<", "<": ">", "=": "=", ">=": "<=", "<=": ">="}


class Assumptions:
    """Sign and order constraints on parameter combinations.

    Each constraint is stored as ``g REL 0`` with g an exact constant.  Bare
    parameters are positive unless a constraint on that parameter alone says
    otherwise.  Linear equalities are solved for one parameter, which is then
    substituted away before any expansion.
    """

    def __init__(self, constraints=(), params=()):
        self._constraints = []
        self.params = set(params)
        self.substitutions = {}
        for g, rel in constraints:
            self._add(g, rel)
        self._check_contradictions()

    @classmethod
    def parse(cls, text, params=()):
        if isinstance(text, Assumptions):
            return text
        items = []
        names = set(params)
        for chunk in (text or "").split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = _REL_RE.split(chunk)
            if len(parts) != 3:
                raise ParseError("assumption must be 'combo REL c': %r" % chunk, 0,
                                 (">", "<", "=", ">=", "<="))
            lhs, rel, rhs = parts
            lhs_e = parse(lhs, var="\0")
            rhs_e = parse(rhs, var="\0")
            names |= params_of(lhs_e) | params_of(rhs_e)
            items.append((to_coeff(sub(lhs_e, rhs_e)), rel))
        return cls(items, names)

    def _add(self, g, rel):
        if rel not in _FLIP:
            raise ParseError("unknown relation %r" % rel, 0, tuple(_FLIP))
        if rel == "=" and g.is_polynomial:
            name, value = _solve_linear(g, set(self.substitutions))
            if name is not None:
                self.substitutions[name] = value
                self.params.discard(name)
        self._constraints.append((g, rel))

    def _check_contradictions(self):
        seen = {}
        for g, rel in self._constraints:
            key, rel2, bound = _normalize_constraint(g, rel)
            if key is None:
                q = g.rational()
                if q is not None and not _holds(q, rel):
                    raise GossamerError("assumption %s %s 0 is false" % (g, rel))
                continue
            for other in seen.get(key, []):
                if _disjoint(other, (rel2, bound)):
                    raise GossamerError("contradictory assumptions on %s" % key)
            seen.setdefault(key, []).append((rel2, bound))

    @property
    def constraints(self):
        return list(self._constraints)

    def constraints_poly(self):
        for g, rel in self._constraints:
            if g.is_polynomial:
                yield dict(g.num), rel

    def param_sign(self, name):
        verdict = Sign.POSITIVE
        for g, rel in self._constraints:
            bound = _single_param_bound(g, rel, name)
            if bound is None:
                continue
            r, b = bound
            if r == "=":
                return _sign_of_q(b)
            if (r == "<" and b <= 0) or (r == "<=" and b < 0):
                return Sign.NEGATIVE
            if r == "<=" and b == 0:
                verdict = Sign.NONPOSITIVE
            elif r == ">=" and b == 0 and verdict is Sign.POSITIVE:
                verdict = Sign.NONNEGATIVE
        return verdict

    def apply(self, e):
        """Substitute parameters eliminated by equality constraints."""
        if not self.substitutions:
            return e
        return substitute(e, None, self.substitutions)

    def __repr__(self):
        return "Assumptions(%s)" % ", ".join("%s %s 0" % (g, r) for g, r in self._constraints)


def _sign_of_q(q):
    if q > 0:
        return Sign.POSITIVE
    if q < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


def _holds(q, rel):
    return {">": q > 0, "<": q < 0, "=": q == 0, ">=": q >= 0, "<=": q <= 0}[rel]


def _linear_parts(g):
    """(const, {param: coeff}) for a linear polynomial in parameters, else None."""
    const_part = Fraction(0)
    lin = {}
    for m, q in g.num:
        if not m:
            const_part = q
            continue
        if len(m) != 1 or m[0][1] != 1 or m[0][0].kind != "param":
            return None
        lin[m[0][0].arg] = q
    return const_part, lin


def _solve_linear(g, taken):
    parts = _linear_parts(g)
    if parts is None:
        return None, None
    c0, lin = parts
    names = sorted(n for n in lin if n not in taken)
    if not names:
        return None, None
    name = names[-1]
    q = lin[name]
    value = Const(-c0 / q)
    for other, qo in lin.items():
        if other != name:
            value = add(value, mul(Const(-qo / q), Param(other)))
    return name, value


def _single_param_bound(g, rel, name):
    parts = _linear_parts(g) if g.is_polynomial else None
    if parts is None:
        return None
    c0, lin = parts
    if set(lin) != {name}:
        return None
    q = lin[name]
    r = rel if q > 0 else _FLIP[rel]
    return r, -c0 / q


def _normalize_constraint(g, rel):
    if not g.is_polynomial:
        return g.key, rel, Fraction(0)
    c0 = Fraction(0)
    rest = []
    for m, q in g.num:
        if not m:
            c0 = q
        else:
            rest.append((m, q))
    if not rest:
        return None, rel, c0
    lead = rest[0][1]
    key = "|".join("%s:%s" % ([(a.key, str(e)) for a, e in m], q / lead) for m, q in rest)
    r = rel if lead > 0 else _FLIP[rel]
    return key, r, -c0 / lead


def _disjoint(a, b):
    """True when 'h r1 b1' and 'h r2 b2' cannot both hold."""

    def interval(r, v):
        inf = float("inf")
        return {
            ">": (v, inf, False, True), ">=": (v, inf, True, True),
            "<": (-inf, v, True, False), "<=": (-inf, v, True, True),
            "=": (v, v, True, True),
        }[r]

    lo1, hi1, lc1, hc1 = interval(*a)
    lo2, hi2, lc2, hc2 = interval(*b)
    lo = max(lo1, lo2)
    hi = min(hi1, hi2)
    if lo < hi:
        return False
    if lo > hi:
        return True
    lo_closed = (lc1 if lo1 == lo else True) and (lc2 if lo2 == lo else True)
    hi_closed = (hc1 if hi1 == hi else True) and (hc2 if hi2 == hi else True)
    return not (lo_closed and hi_closed)
