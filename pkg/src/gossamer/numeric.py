"""Floating-point evaluation in the log domain, used as an independent oracle.

Every node evaluates to a pair ``(sign, ln|value|)`` so that towers such as
``exp(exp(x))`` at ``x = 10^9`` stay representable.  Nothing here feeds back
into the exact engine except as a last-resort equality spot check.
"""

from fractions import Fraction

import mpmath

__all__ = ["signed_log", "evaluate", "log_ratio", "numerically_equal"]

DPS = 60


def _value(pair):
    s, lm = pair
    if s == 0:
        return mpmath.mpf(0)
    return s * mpmath.exp(lm)


def _sgn(v):
    return 0 if v == 0 else (1 if v > 0 else -1)


def _mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def signed_log(e, x, params=None):
    """(sign, ln|e|) of e at main variable = x, params bound by name.

    x and the parameter values may be ints, Fractions, floats or mpf.
    """
    params = params or {}
    with mpmath.workdps(DPS):
        return _ev(e, _mpf(x), {k: _mpf(v) for k, v in params.items()})


def _ev(e, x, params):
    k = e.kind
    if k == "const":
        v = e.value
        if v == 0:
            return 0, mpmath.ninf
        return _sgn(v), mpmath.log(abs(_mpf(v)))
    if k == "param":
        v = params[e.name]
        return _sgn(v), (mpmath.log(abs(v)) if v else mpmath.ninf)
    if k == "var":
        return _sgn(x), (mpmath.log(abs(x)) if x else mpmath.ninf)
    if k == "exp":
        return 1, _value(_ev(e.arg, x, params))
    if k == "ln":
        s, lm = _ev(e.arg, x, params)
        if s <= 0:
            raise ValueError("logarithm of a non-positive value")
        return _sgn(lm), (mpmath.log(abs(lm)) if lm else mpmath.ninf)
    if k == "fact":
        v = _value(_ev(e.arg, x, params))
        if v <= -1:
            raise ValueError("factorial argument out of range")
        return 1, mpmath.loggamma(v + 1)
    if k == "mul":
        s, lm = 1, mpmath.mpf(0)
        for a in e.args:
            sa, la = _ev(a, x, params)
            s *= sa
            if sa == 0:
                return 0, mpmath.ninf
            lm += la
        return s, lm
    if k == "div":
        sn, ln_ = _ev(e.num, x, params)
        sd, ld = _ev(e.den, x, params)
        if sd == 0:
            raise ZeroDivisionError("division by zero")
        if sn == 0:
            return 0, mpmath.ninf
        return sn * sd, ln_ - ld
    if k == "add":
        parts = [p for p in (_ev(a, x, params) for a in e.args) if p[0] != 0]
        if not parts:
            return 0, mpmath.ninf
        top = max(lm for _, lm in parts)
        total = mpmath.fsum(s * mpmath.exp(lm - top) for s, lm in parts)
        if total == 0:
            return 0, mpmath.ninf
        return _sgn(total), top + mpmath.log(abs(total))
    raise TypeError("cannot evaluate node %r" % k)


def evaluate(e, x, params=None):
    """Plain value of e at x (may overflow to inf for towers)."""
    with mpmath.workdps(DPS):
        return _value(signed_log(e, x, params))


def log_ratio(f, g, x, params=None):
    """ln|f| - ln|g| at x, computed without forming f or g."""
    _, lf = signed_log(f, x, params)
    _, lg = signed_log(g, x, params)
    return lf - lg


def numerically_equal(a, b, points, params=None, tol=40):
    """True when a and b agree to ``tol`` digits at every sample point."""
    for x in points:
        try:
            sa, la = signed_log(a, x, params)
            sb, lb = signed_log(b, x, params)
        except (ValueError, ZeroDivisionError, KeyError):
            return False
        if sa != sb:
            return False
        if sa == 0:
            continue
        if abs(la - lb) > mpmath.mpf(10) ** (-tol):
            return False
    return True

