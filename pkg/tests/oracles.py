"""Independent reference values for the test suites.

The floating-point oracle evaluates the *source text* with mpmath, so it
shares no code with the engine's parser, normal form or expansions.
Frozen values below were computed by hand or with exact integer arithmetic.
"""

import math
from fractions import Fraction

import mpmath

SAMPLE_POINTS = (10 ** 3, 10 ** 6, 10 ** 9)


def _namespace(x):
    return {"ln": mpmath.log, "exp": mpmath.exp, "x": mpmath.mpf(x),
            "fact": lambda v: mpmath.gamma(v + 1), "__builtins__": {}}


def value(src, x):
    with mpmath.workdps(50):
        return eval(src.replace("^", "**"), _namespace(x))


def log_abs(src, x):
    with mpmath.workdps(50):
        return mpmath.log(abs(value(src, x)))


def log_ratio_trend(f, g, points=SAMPLE_POINTS):
    """ln|f| - ln|g| at each sample point."""
    return [float(log_abs(f, x) - log_abs(g, x)) for x in points]


def trend_contradicts(verdict, trend, tol=1e-9):
    """Whether a sampled trend flatly contradicts a magnitude verdict.

    Much-less needs ln f - ln g -> -inf, so a strictly increasing sample
    contradicts it (and symmetrically for much-greater).  Proportional needs a
    bounded log ratio, so steps that grow instead of shrinking contradict it.
    Three samples cannot prove a trend; they can only fail to contradict one.
    """
    l1, l2, l3 = trend
    if verdict == "prec":
        return l2 > l1 + tol and l3 > l2 + tol
    if verdict == "succ":
        return l2 < l1 - tol and l3 < l2 - tol
    d1, d2 = abs(l2 - l1), abs(l3 - l2)
    return d2 > d1 + 0.1 and d2 > 0.5


# Exact references --------------------------------------------------------------

NEWTON_X1 = Fraction(3, 2) + (Fraction(2, 3) - Fraction(3, 4))  # = 17/12 by hand
SQRT2_PLACES = 50


def sqrt2_reference_digits(places=SQRT2_PLACES):
    """Decimal digits of sqrt(2) after the point, from isqrt(2*10^(2k))."""
    return str(math.isqrt(2 * 10 ** (2 * places)))[1:]


def agreeing_places(q, places=SQRT2_PLACES):
    ref = sqrt2_reference_digits(places)
    got = str(q.numerator * 10 ** places // q.denominator)
    if got[0] != "1":
        return -1
    n = 0
    for a, b in zip(ref, got[1:]):
        if a != b:
            break
        n += 1
    return n
