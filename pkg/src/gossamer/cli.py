"""Command-line front end: ``gossamer <subcommand> ...``.

Exit codes: 0 success, 1 failed verification or a determinate negative
answer, 2 usage or parse error, 3 a sign query or precision budget blocked
the computation.
"""

import argparse
import json
import sys

from .errors import (AssumptionNeeded, DepthLimit, FactorialDomainError, GossamerError,
                     ParseError, PrecisionExhausted, UndefinedAtPoint, NotIndeterminate)
from .expr import Assumptions, Point, identifiers, parse, to_string, to_infinity
from .gnum import absorb, expand_in, with_precision
from .limit import limit, limit_lhopital, newton_sqrt2_demo, sqrt2_digits
from .relate import compare, is_monotone_tail, parse_chain, verify_chain
from .scale import Family, ScaleBasis, extend_basis, standard_scale

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BLOCKED = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser():
    p = _Parser(prog="gossamer", description="Asymptotic relations, expansions and limits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, point_required=True):
        sp.add_argument("--at", required=point_required, metavar="VAR=POINT",
                        help="point, e.g. x=inf, x=0+, n=inf, x=2-")
        sp.add_argument("--assume", default="", help='constraints, e.g. "a>0, mu+v<1"')
        sp.add_argument("--param", action="append", default=[], metavar="NAME",
                        help="declare a parameter (repeatable); when given, every "
                             "other identifier must be the variable")
        sp.add_argument("--terms", type=int, default=None, help="truncation budget")
        sp.add_argument("--json", action="store_true", help="one JSON object on stdout")
        sp.add_argument("--unicode", action="store_true", help="relation symbols in UTF-8")

    sp = sub.add_parser("compare", help="solve f z g at a point")
    sp.add_argument("f")
    sp.add_argument("g")
    common(sp)
    sp = sub.add_parser("limit", help="limit of an expression at a point")
    sp.add_argument("expr")
    sp.add_argument("--lhopital", metavar="DEN", default=None,
                    help="treat EXPR as numerator and use the L'Hopital loop over DEN")
    common(sp)
    sp = sub.add_parser("simplify", help="expand, absorb, print the leading part")
    sp.add_argument("expr")
    common(sp)
    sp = sub.add_parser("series", help="expand and print every term")
    sp.add_argument("expr")
    common(sp)
    sp = sub.add_parser("scale", help="a standard scale, or the basis of an expression")
    sp.add_argument("expr", nargs="?", default=None)
    sp.add_argument("--family", choices=[f.value for f in Family], default=None)
    sp.add_argument("--depth", type=int, default=4)
    common(sp, point_required=False)
    sp = sub.add_parser("verify", help="check a derivation chain file")
    sp.add_argument("file", help="chain file, or - for stdin")
    common(sp, point_required=False)
    sp = sub.add_parser("monotone", help="is a(n) eventually increasing or decreasing")
    sp.add_argument("expr")
    common(sp)
    sp = sub.add_parser("demo", help="reproduction demos")
    sp.add_argument("name", choices=["sqrt2"])
    sp.add_argument("--iters", type=int, default=5)
    sp.add_argument("--json", action="store_true")
    return p


def _point(args):
    if not getattr(args, "at", None):
        return "x", Point.infinity()
    return Point.parse(args.at)


def _expr(text, var, args):
    declared = list(args.param)
    if declared:
        extra = [n for n in identifiers(text) if n != var and n not in declared]
        if extra:
            raise ParseError("undeclared identifier(s): %s" % ", ".join(extra), 0,
                             ("--param NAME",))
        return parse(text, var=var, params=declared)
    return parse(text, var=var, params=[n for n in identifiers(text) if n != var])


def _assumptions(args):
    return Assumptions.parse(args.assume, params=args.param)


def _emit(args, out, payload, plain):
    if getattr(args, "json", False):
        payload.setdefault("diagnostics", [])
        out.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        out.write(plain + "\n")


def _payload(verdict, **extra):
    base = {"verdict": verdict, "magnitude": None, "asymptotic": None, "close": None,
            "order": None, "diagnostics": []}
    base.update(extra)
    return base


def _cmd_compare(args, out):
    var, point = _point(args)
    f, g = _expr(args.f, var, args), _expr(args.g, var, args)
    r = compare(f, g, point, _assumptions(args), args.terms, var)
    rel = r.relation
    payload = _payload(rel.token, magnitude=r.magnitude.token, asymptotic=r.asymptotic,
                       close=r.close, order=r.order.value, landau=r.landau,
                       diagnostics=["method: %s" % r.method])
    _emit(args, out, payload, r.describe(args.unicode))
    return EXIT_OK


def _cmd_limit(args, out):
    var, point = _point(args)
    e = _expr(args.expr, var, args)
    a = _assumptions(args)
    if args.lhopital:
        res = limit_lhopital(e, _expr(args.lhopital, var, args), point, a, terms=args.terms,
                             var=var)
    else:
        res = limit(e, point, a, args.terms, var)
    payload = _payload(str(res) if res.kind != "undetermined" else None)
    if res.kind == "undetermined":
        payload["diagnostics"].append(res.reason)
        _emit(args, out, payload, str(res))
        blocked = ("AssumptionNeeded" in res.reason or "PrecisionExhausted" in res.reason
                   or "DepthLimit" in res.reason or "RoundsExhausted" in res.reason)
        return EXIT_BLOCKED if blocked else EXIT_FAIL
    _emit(args, out, payload, str(res))
    return EXIT_OK


def _expansion(args):
    var, point = _point(args)
    e = _expr(args.expr, var, args)
    a = _assumptions(args)
    sides = to_infinity(a.apply(e), point, var)
    shifted = not point.is_infinity
    results = []
    for side, s in sides:
        results.append((side, with_precision(lambda ctx: expand_in(s, ctx), a, args.terms,
                                             var=var, point=point)))
    return var, point, shifted, results


def _series_text(x, var, shifted, point):
    note = ""
    if shifted:
        sign = "-" if point.side == "minus" else "+"
        note = "   [%s = %s %s 1/%s, %s -> inf]" % (var, point.value, sign, var, var)
    return x.render(var) + note


def _cmd_simplify(args, out):
    var, point, shifted, results = _expansion(args)
    lines, series = [], []
    for side, x in results:
        lead = absorb(x)
        text = _series_text(lead, var, shifted, Point.finite(point.value, side)
                            if side in ("plus", "minus") else point)
        lines.append(text if len(results) == 1 else "%s: %s" % (side, text))
        series.append(lead.render(var))
    _emit(args, out, _payload(series[0], series=series), "\n".join(lines))
    return EXIT_OK


def _cmd_series(args, out):
    var, point, shifted, results = _expansion(args)
    lines, series = [], []
    for side, x in results:
        if len(results) > 1:
            lines.append("%s:" % side)
        lines.append(x.render(var, multiline=True))
        series.append([[str(c), m.render(var)] for c, m in x.terms]
                      + ([["O", x.err.render(var)]] if x.err is not None else []))
    if shifted:
        lines.append("(in the shifted variable: %s -> inf)" % var)
    _emit(args, out, _payload(results[0][1].render(var), series=series), "\n".join(lines))
    return EXIT_OK


def _cmd_scale(args, out):
    var, point = _point(args)
    if args.family:
        sc = standard_scale(args.family, args.depth, point, var)
        text = sc.render(args.unicode)
        _emit(args, out, _payload(text, relations=[r.token for r in sc.relations]), text)
        return EXIT_OK
    if not args.expr:
        raise _Usage("scale needs EXPR or --family")
    e = _expr(args.expr, var, args)
    shifted = to_infinity(_assumptions(args).apply(e), point, var)[0][1]
    basis = extend_basis(ScaleBasis([], Point.infinity()), shifted, _assumptions(args),
                         args.terms or 8)
    text = basis.render(var)
    _emit(args, out, _payload(text), text)
    return EXIT_OK


def _cmd_verify(args, out):
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    chain = parse_chain(text, args.assume or None)
    report = verify_chain(chain)
    payload = _payload("OK" if report.ok else "FAIL",
                       steps=[{"line": s.line, "ok": s.ok, "reason": s.reason}
                              for s in report.steps])
    _emit(args, out, payload, report.render())
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_monotone(args, out):
    var, point = _point(args)
    if not point.is_infinity:
        raise _Usage("monotone works at VAR=inf")
    e = _expr(args.expr, var, args)
    verdict = is_monotone_tail(e, _assumptions(args), var, args.terms).value
    _emit(args, out, _payload(verdict), verdict)
    return EXIT_OK


def _cmd_demo(args, out):
    if args.iters < 0:
        raise _Usage("--iters must be >= 0")
    x = newton_sqrt2_demo(args.iters)
    digits = sqrt2_digits(x)
    lines = ["x%d = %s" % (args.iters, x)]
    if args.iters <= 6:
        from decimal import Decimal, getcontext
        getcontext().prec = 60
        lines.append("    = %s" % (Decimal(x.numerator) / Decimal(x.denominator)))
    lines.append("%d digits verified" % digits if digits < 47 else
                 "47+ digits verified (%d agreeing places)" % digits)
    _emit(args, out, _payload(str(x), digits=digits), "\n".join(lines))
    return EXIT_OK


_COMMANDS = {
    "compare": _cmd_compare, "limit": _cmd_limit, "simplify": _cmd_simplify,
    "series": _cmd_series, "scale": _cmd_scale, "verify": _cmd_verify,
    "monotone": _cmd_monotone, "demo": _cmd_demo,
}


def run(argv=None, out=None, err=None):
    """Run one invocation; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except _Usage as exc:
        return _fail(args, out, err, "usage: %s" % exc, EXIT_USAGE)
    except (ParseError, FactorialDomainError, OSError) as exc:
        return _fail(args, out, err, "error: %s" % exc, EXIT_USAGE)
    except (AssumptionNeeded, PrecisionExhausted, DepthLimit) as exc:
        return _fail(args, out, err, "blocked: %s" % exc, EXIT_BLOCKED)
    except (UndefinedAtPoint, NotIndeterminate, GossamerError) as exc:
        return _fail(args, out, err, "error: %s" % exc, EXIT_FAIL)


def _fail(args, out, err, message, code):
    if args is not None and getattr(args, "json", False):
        out.write(json.dumps(_payload(None, diagnostics=[message]), ensure_ascii=False) + "\n")
    else:
        err.write(message + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
