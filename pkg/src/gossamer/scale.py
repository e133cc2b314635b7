"""Comparison classes at infinity and the monomials built from them.

Three kinds of basis element exist: iterated logarithms ``ln_k(x)``, the
variable itself, and ``exp(m)`` for a monomial ``m`` that tends to infinity.
Every element tends to +infinity, and distinct elements always lie in
distinct comparability classes, so a monomial's growth is decided by its
highest-class element alone.

Class order is found by comparing logarithms: ``ln(ln_k x) = ln_{k+1} x``,
``ln x = ln_1 x`` and ``ln(exp(m)) = m``, which reduces any comparison to one
between strictly simpler monomials.
"""

import enum

from .coeff import Coeff, Sign, sign_of
from .errors import AssumptionNeeded, DepthLimit
from .expr import Assumptions, Point, Var, exp, ln, power, to_string, const, mul

__all__ = [
    "BasisElement", "IterLog", "VarElem", "ExpElem", "VAR", "Monomial",
    "Context", "ScaleBasis", "mrv", "extend_basis", "standard_scale",
    "StandardScale", "DEFAULT_MAX_HEIGHT",
]

DEFAULT_MAX_HEIGHT = 8


class BasisElement:
    __slots__ = ("key", "_hash", "height")

    def __eq__(self, other):
        return isinstance(other, BasisElement) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "<%s>" % self.render("x")

    def log_monomial(self):
        """ln of the element, as a monomial with coefficient 1."""
        raise NotImplementedError


class IterLog(BasisElement):
    __slots__ = ("k",)

    def __init__(self, k):
        if k < 1:
            raise ValueError("iterated log depth must be >= 1")
        self.k = k
        self.key = "L%d" % k
        self._hash = hash(self.key)
        self.height = 0

    def log_monomial(self):
        return Monomial.of(IterLog(self.k + 1))

    def render(self, var):
        s = var
        for _ in range(self.k):
            s = "ln(%s)" % s
        return s


class VarElem(BasisElement):
    __slots__ = ()

    def __init__(self):
        self.key = "X"
        self._hash = hash(self.key)
        self.height = 0

    def log_monomial(self):
        return Monomial.of(IterLog(1))

    def render(self, var):
        return var


VAR = VarElem()


class ExpElem(BasisElement):
    __slots__ = ("mono",)

    def __init__(self, mono):
        self.mono = mono
        self.key = "E[%s]" % mono.key
        self._hash = hash(self.key)
        self.height = 1 + max((b.height for b, _ in mono.items), default=0)

    def log_monomial(self):
        return self.mono

    def render(self, var):
        return "exp(%s)" % self.mono.render(var)


class Monomial:
    """Product of basis elements raised to exact (possibly symbolic) powers."""

    __slots__ = ("items", "key", "_hash")

    def __init__(self, items):
        items = tuple(sorted(((b, e) for b, e in items if not e.is_zero()),
                             key=lambda it: it[0].key))
        self.items = items
        self.key = "*".join("%s^%s" % (b.key, e.key) for b, e in items)
        self._hash = hash(self.key)

    @classmethod
    def of(cls, elem, exponent=1):
        if not isinstance(exponent, Coeff):
            exponent = Coeff.const(exponent)
        return cls(((elem, exponent),))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Monomial(%s)" % self.render("x")

    @property
    def is_one(self):
        return not self.items

    def exponent(self, elem):
        for b, e in self.items:
            if b == elem:
                return e
        return Coeff.const(0)

    def elements(self):
        return [b for b, _ in self.items]

    def __mul__(self, other):
        if not other.items:
            return self
        if not self.items:
            return other
        exps = dict(self.items)
        for b, e in other.items:
            exps[b] = exps[b] + e if b in exps else e
        return Monomial(exps.items())

    def __pow__(self, c):
        if not isinstance(c, Coeff):
            c = Coeff.const(c)
        if c.is_zero():
            return ONE_MONO
        return Monomial((b, e * c) for b, e in self.items)

    def inverse(self):
        return Monomial((b, -e) for b, e in self.items)

    def __truediv__(self, other):
        return self * other.inverse()

    def render(self, var="x"):
        if not self.items:
            return "1"
        parts = []
        for b, e in sorted(self.items, key=lambda it: _display_rank(it[0]), reverse=True):
            base = b.render(var)
            q = e.rational()
            if q == 1:
                parts.append(base)
            elif q is not None and q.denominator == 1 and q > 0:
                parts.append("%s^%d" % (base, q))
            else:
                parts.append("%s^(%s)" % (base, e))
        return "*".join(parts)


def _display_rank(b):
    if isinstance(b, ExpElem):
        return (2, b.height, b.key)
    if isinstance(b, VarElem):
        return (1, 0, "")
    return (0, -b.k, "")


ONE_MONO = Monomial(())


class Context:
    """Per-computation settings plus memo tables for class comparisons.

    A context is created per top-level call and is never shared between
    threads; it holds the assumptions, the term budget and the tower limit.
    """

    def __init__(self, assumptions=None, terms=8, max_height=DEFAULT_MAX_HEIGHT,
                 var="x", point=None):
        self.assumptions = assumptions if assumptions is not None else Assumptions()
        self.T = terms
        self.max_height = max_height
        self.var = var
        self.point = point or Point.infinity()
        self._class = {}
        self._growth = {}
        self.memo = {}

    def sign(self, c):
        return sign_of(c, self.assumptions)

    def strict_sign(self, c, what=None):
        s = sign_of(c, self.assumptions)
        if s is Sign.POSITIVE:
            return 1
        if s is Sign.NEGATIVE:
            return -1
        if s is Sign.ZERO:
            return 0
        raise AssumptionNeeded(what or "sign of %s" % c)

    def class_cmp(self, b1, b2):
        """+1 if b1 lies in a higher comparability class than b2."""
        if b1 == b2:
            return 0
        key = (b1.key, b2.key)
        hit = self._class.get(key)
        if hit is not None:
            return hit
        if isinstance(b1, IterLog) and isinstance(b2, IterLog):
            out = 1 if b1.k < b2.k else -1
        elif isinstance(b1, VarElem) and isinstance(b2, IterLog):
            out = 1
        elif isinstance(b2, VarElem) and isinstance(b1, IterLog):
            out = -1
        else:
            out = self.growth(b1.log_monomial() / b2.log_monomial())
            if out == 0:
                raise AssertionError("distinct basis elements share a class")
        self._class[key] = out
        self._class[(b2.key, b1.key)] = -out
        return out

    def top_element(self, m):
        top = None
        for b, _ in m.items:
            if top is None or self.class_cmp(b, top) > 0:
                top = b
        return top

    def growth(self, m):
        """+1 if the monomial tends to infinity, -1 to zero, 0 if it is 1."""
        if m.is_one:
            return 0
        hit = self._growth.get(m.key)
        if hit is not None:
            return hit
        top = self.top_element(m)
        e = m.exponent(top)
        out = self.strict_sign(e, "%s > 0 or %s < 0 (exponent of %s)"
                               % (e, e, top.render(self.var)))
        self._growth[m.key] = out
        return out

    def cmp(self, m1, m2):
        if m1 == m2:
            return 0
        return self.growth(m1 / m2)

    def exp_monomial(self, c, m):
        """exp(c*m) for m tending to infinity, as a monomial."""
        if len(m.items) == 1:
            b, e = m.items[0]
            if isinstance(b, IterLog) and e.is_one():
                low = VAR if b.k == 1 else IterLog(b.k - 1)
                return Monomial.of(low, c)
        elem = ExpElem(m)
        if elem.height > self.max_height:
            raise DepthLimit("exponential tower deeper than %d" % self.max_height)
        return Monomial.of(elem, c)


# -- bases ------------------------------------------------------------------------


class ScaleBasis:
    """Elements sorted ascending by growth, at a point."""

    __slots__ = ("elements", "point")

    def __init__(self, elements, point=None, ctx=None):
        ctx = ctx or Context()
        uniq = {b.key: b for b in elements}
        self.elements = tuple(_sort_elements(list(uniq.values()), ctx))
        self.point = point or Point.infinity()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, b):
        return b in self.elements

    def render(self, var="x"):
        return " << ".join(b.render(var) for b in self.elements)

    def __repr__(self):
        return "ScaleBasis(%s)" % self.render()


def _sort_elements(elems, ctx):
    import functools
    return sorted(elems, key=functools.cmp_to_key(ctx.class_cmp))


def _collect_elements(m, out):
    for b, _ in m.items:
        if b.key in out:
            continue
        out[b.key] = b
        if isinstance(b, ExpElem):
            _collect_elements(b.mono, out)
        elif isinstance(b, IterLog):
            for j in range(1, b.k):
                out.setdefault("L%d" % j, IterLog(j))
            out.setdefault(VAR.key, VAR)


def extend_basis(basis, e, assumptions=None, terms=8, max_height=DEFAULT_MAX_HEIGHT):
    """A basis holding every class needed to expand e, plus the old ones."""
    from .gnum import expand
    x = expand(e, basis.point, assumptions, terms, max_height=max_height)
    found = {b.key: b for b in basis.elements}
    for _, m in x.terms:
        _collect_elements(m, found)
    if x.err is not None:
        _collect_elements(x.err, found)
    return ScaleBasis(found.values(), basis.point, x.ctx)


# -- most rapidly varying subexpressions --------------------------------------------------


def mrv(e, point=None, assumptions=None, terms=8):
    """Subexpressions (the variable, exp and fact nodes) of maximal growth class.

    Candidates are ranked by the leading monomial of their logarithm; an exp
    whose argument stays bounded is not a candidate.
    """
    from .gnum import expand_in

    point = point or Point.infinity()
    if not point.is_infinity:
        raise ValueError("mrv works at infinity; shift the point first")
    assumptions = assumptions or Assumptions()
    candidates = {}

    def walk(node):
        if node.kind == "var":
            candidates[node.key] = node
        elif node.kind in ("exp", "fact"):
            candidates[node.key] = node
        if node.kind not in ("const", "param", "var"):
            for a in node.args:
                walk(a)

    walk(e)
    if not candidates:
        return set()

    def body(ctx):
        ranked = []
        for node in candidates.values():
            if node.kind == "var":
                lead = Monomial.of(IterLog(1))
            elif node.kind == "fact":
                lead = Monomial.of(VAR) * Monomial.of(IterLog(1))
            else:
                arg = expand_in(node.arg, ctx)
                if arg.is_exact_zero():
                    continue
                _, lead = arg.lead()
                if ctx.growth(lead) <= 0:
                    continue
            ranked.append((node, lead))
        if not ranked:
            return set()
        best = ranked[0][1]
        for _, m in ranked[1:]:
            if ctx.cmp(m, best) > 0:
                best = m
        return {node for node, m in ranked if m == best}

    from .gnum import with_precision
    return with_precision(body, assumptions, terms)


# -- standard scales ------------------------------------------------------------------


class StandardScale:
    """Members of a scale family with the relation between neighbours."""

    def __init__(self, members, relations, var="x"):
        self.members = list(members)
        self.relations = list(relations)
        self.var = var

    def render(self, unicode=False):
        out = [to_string(self.members[0])]
        for rel, m in zip(self.relations, self.members[1:]):
            out.append(rel.symbol if unicode else _ARROWS[rel.token])
            out.append(to_string(m))
        return " ".join(out)

    def __str__(self):
        return self.render()


_ARROWS = {"prec": "<<", "succ": ">>", "propto": "~", "sim": "~"}


class Family(enum.Enum):
    POWERS = "powers"
    TOWERS = "exponential-towers"
    LOGS = "logs"
    MIXED = "mixed"


def _family_members(family, depth, var):
    x = Var(var)
    if family is Family.POWERS:
        return [power(x, const(k)) for k in range(1, depth + 1)]
    if family is Family.LOGS:
        out = [x]
        for _ in range(depth - 1):
            out.append(ln(out[-1]))
        return out
    if family is Family.TOWERS:
        out = [x]
        for _ in range(depth - 1):
            out.append(exp(out[-1]))
        return out
    # mixed: iterated logs, powers, then exponentials
    lx = ln(x)
    base = [ln(lx), lx, x, mul(x, lx), power(x, const(2)), exp(x), exp(exp(x))]
    inner = ln(lx)
    while len(base) < depth:
        inner = ln(inner)
        base.insert(0, inner)
    return base[:depth]


def standard_scale(family, depth, point=None, var="x"):
    """First ``depth`` members of a scale family, related by the engine."""
    from .relate import compare

    if depth < 1:
        raise ValueError("depth must be at least 1")
    family = Family(family) if not isinstance(family, Family) else family
    point = point or Point.infinity()
    members = _family_members(family, depth, var)
    relations = []
    for a, b in zip(members, members[1:]):
        res = compare(a, b, point)
        relations.append(res.relation)
    return StandardScale(members, relations, var)


__all__ += ["Family", "ONE_MONO"]
