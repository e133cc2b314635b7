"""Asymptotic comparison of functions with gossamer-number multiseries.

The public surface: parse expressions, expand them at a point, compare two
functions, take limits, and verify written derivation chains.
"""

from .coeff import Coeff, Sign
from .errors import (AssumptionNeeded, ConditionViolated, DepthLimit, DivisionByExactZero,
                     FactorialDomainError, GossamerError, NotIndeterminate, ParseError,
                     PrecisionExhausted, UndefinedAtPoint, UnsupportedRow)
from .expr import Assumptions, Expr, Point, differentiate, parse, substitute, to_string
from .gnum import (ExtendedReal, Form, GNum, absorb, classify, components, expand,
                   sign_leading, st)
from .limit import LimitResult, limit, limit_lhopital, newton_sqrt2_demo, shift_point
from .relate import (Monotonicity, Order, RelOp, Relation, RelationResult, apply_rel_op,
                     compare, is_monotone_tail, logdom, parse_chain, verify_chain, weaken)
from .scale import Family, ScaleBasis, mrv, standard_scale

__version__ = "0.1.0"

__all__ = [
    "Coeff", "Sign", "AssumptionNeeded", "ConditionViolated", "DepthLimit",
    "DivisionByExactZero", "FactorialDomainError", "GossamerError", "NotIndeterminate",
    "ParseError", "PrecisionExhausted", "UndefinedAtPoint", "UnsupportedRow",
    "Assumptions", "Expr", "Point", "differentiate", "parse", "substitute", "to_string",
    "ExtendedReal", "Form", "GNum", "absorb", "classify", "components", "expand",
    "sign_leading", "st", "LimitResult", "limit", "limit_lhopital", "newton_sqrt2_demo",
    "shift_point", "Monotonicity", "Order", "RelOp", "Relation", "RelationResult",
    "apply_rel_op", "compare", "is_monotone_tail", "logdom", "parse_chain",
    "verify_chain", "weaken", "Family", "ScaleBasis", "mrv", "standard_scale",
]
