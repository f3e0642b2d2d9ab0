"""Command-line front end.

Every verb prints deterministic line-oriented text.  Exit status is 0 on
success, 1 on a mathematical or domain error (reported on stderr as
"ErrorName: message") and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import fekete, limits, numbers, series, taylor, transcendental
from .errors import KernelError
from .expr import classify, differentiate, eval_guarded, expand_laurent, expand_taylor, parse, render
from .numbers import as_rational, format_rational as fr

_SURD = re.compile(
    r"\(?\s*(?:(?P<a>[+-]?\d+)\s*(?P<op>[+-])\s*)?(?P<sign>-)?\s*(?:(?P<b>\d+)\s*\*\s*)?"
    r"sqrt\(\s*(?P<n>\d+)\s*\)\s*\)?\s*(?:/\s*(?P<c>\d+))?")


def parse_number(text: str):
    """A rational "p/q" or a surd "(a + b*sqrt(n))/c"."""
    text = text.strip()
    m = _SURD.fullmatch(text)
    if not m:
        return as_rational(text)
    b = int(m.group("b") or 1)
    if m.group("sign"):
        b = -b
    if m.group("op") == "-":
        b = -b
    a = int(m.group("a") or 0)
    c = int(m.group("c") or 1)
    n = int(m.group("n"))
    k = numbers._squarefree_split(n)[0]
    if k * k == n:
        return Fraction(a + b * k, c)
    return numbers.QuadraticSurd.make(a, b, c, n)


def parse_int_poly(text: str):
    """Comma-separated integer coefficients, lowest degree first."""
    try:
        coeffs = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise ValueError(f"polynomial must be comma-separated integers: {text!r}")
    if not any(coeffs):
        raise ValueError("the zero polynomial is not allowed")
    return coeffs


def _out(line=""):
    print(line)


def _table(rows, fmt):
    sep = "\t" if fmt == "tsv" else " "
    for row in rows:
        _out(sep.join(str(c) for c in row))


# --- verbs -----------------------------------------------------------------------

def cmd_diff(args):
    e = parse(args.expr)
    d = differentiate(e)
    _out(render(d))
    if args.classify:
        _out(f"class: {classify(e).value}")
        _out(f"derivative-class: {classify(d).value}")
    if args.at is not None:
        p = as_rational(args.at)
        _out(f"value: {eval_guarded(e, p, args.bits)}")
        _out(f"derivative-value: {eval_guarded(d, p, args.bits)}")


def cmd_taylor(args):
    if args.base:
        f = taylor.PowA(args.power) if args.base == "PowA" else taylor.BaseFn(args.base)
        p = taylor.maclaurin(f, args.order)
        _out(taylor.render_taylor(p))
        if args.remainder_at is not None:
            bound = taylor.lagrange_remainder_bound(f, args.order, as_rational(args.remainder_at))
            _out(f"remainder-bound: {fr(bound)}")
        return
    if args.expr is None:
        raise UsageError("taylor needs an expression or --base")
    e = parse(args.expr)
    if args.laurent:
        lp = expand_laurent(e, args.order)
        if args.reciprocal:
            lp = taylor.lp_reciprocal(lp)
        _out(taylor.render_laurent(lp))
        if args.coeffs:
            _out(f"mlow: {lp.mlow}")
            _out("coeffs: " + ", ".join(fr(c) for c in lp.coeffs))
        return
    p = expand_taylor(e, args.order)
    if args.reciprocal:
        p = taylor.tp_reciprocal(p, args.method)
    if args.derive:
        p = taylor.tp_calculus("derive", p)
    if args.antiderive:
        p = taylor.tp_calculus("antiderive", p)
    if args.shift is not None:
        p = taylor.tp_shift_center(p, as_rational(args.shift))
    _out(taylor.render_taylor(p))
    if args.coeffs:
        _out("coeffs: " + ", ".join(fr(c) for c in p.coeffs))


def cmd_limit(args):
    _out(str(limits.ratio_limit(parse(args.f), parse(args.g), args.order)))


def cmd_cfrac(args):
    if args.action == "encode":
        _out(str(numbers.cfrac_encode(parse_number(args.value), args.max_terms)))
    else:
        cf = numbers.ContinuedFraction.parse(args.value)
        for j, c in enumerate(numbers.cfrac_convergents(cf, args.k), 1):
            _out(f"{j}: {fr(c)}")


def cmd_decimal(args):
    if args.action == "encode":
        _out(str(numbers.to_periodic_decimal(as_rational(args.value))))
    elif args.action == "decode":
        _out(fr(numbers.from_periodic_decimal(numbers.PeriodicDecimal.parse(args.value))))
    else:
        _out(str(numbers.near_decimal_partner(numbers.PeriodicDecimal.parse(args.value))))


def cmd_baseq(args):
    if args.action == "encode":
        _out(str(numbers.base_q_codec("encode", int(args.value), args.base)))
    else:
        _out(str(numbers.base_q_codec("decode", args.value, args.base)))


def cmd_rat(args):
    if args.op == "neg":
        if args.y is not None:
            raise UsageError("neg takes one operand")
        _out(fr(numbers.rat_arith("neg", args.x)))
        return
    if args.y is None:
        raise UsageError(f"{args.op} takes two operands")
    r = numbers.rat_arith(args.op, args.x, args.y)
    _out(str(r) if args.op == "cmp" else fr(r))


def cmd_sqrt2(args):
    for n in range(1, args.n + 1):
        a = numbers.babylonian_sqrt2(n)
        _out(f"{n}: {fr(a)}")


def _target(text):
    return text if text in (series.PLUS_INF, series.MINUS_INF, series.NO_SUM) else as_rational(text)


def cmd_series(args):
    act = args.action
    fmt = args.format
    if act == "sums":
        t = series.parse_terms(args.terms)
        _table(((k, fr(s)) for k, s in enumerate(series.partial_sums(t, args.n), 1)), fmt)
    elif act == "test":
        v = series.convergence_test(args.kind, series.parse_terms(args.terms), args.window)
        _out(f"verdict: {v.tag}")
        _out(f"test: {v.test}")
    elif act == "zeta":
        _out(f"verdict: {series.zeta_classify(as_rational(args.s)).tag}")
    elif act == "bracket":
        lo, hi = series.leibniz_bracket(series.parse_terms(args.terms), args.n)
        _out(f"[{fr(lo)}, {fr(hi)}]")
    elif act == "cauchy":
        c = series.cauchy_product(series.parse_terms(args.a), series.parse_terms(args.b))
        _table(((k, fr(x)) for k, x in enumerate(c.prefix(args.n))), fmt)
    elif act == "group":
        g = series.group_terms(series.parse_terms(args.terms), args.size)
        _table(((k, fr(x)) for k, x in enumerate(g.prefix(args.n), 1)), fmt)
    elif act == "rearrange":
        t = series.parse_terms(args.terms)
        if args.product:
            plan = series.rearrange_product_to_target(t, _target(args.target), args.emit)
        else:
            plan = series.rearrange_to_target(t, _target(args.target), args.emit)
        rows = zip(range(1, args.emit + 1), plan.emitted, plan.partial_sums)
        _table(((k, i, fr(s)) for k, i, s in rows), fmt)
    elif act == "gamma":
        h, r = series.harmonic_gamma_check(args.n)
        _out(f"h: {fr(h)}")
        _out(f"residual: {r}")
    elif act == "binomial-domain":
        _out(str(series.binomial_series_domain(as_rational(args.exponent))))
    elif act == "euler":
        exponent = int(as_rational(args.s))
        prod = series.euler_product(exponent, args.primes)
        partial = series.zeta_partial_sum(exponent, args.n)
        _out(f"product: {fr(prod)}")
        _out(f"partial-sum: {fr(partial)}")
        _out(f"difference: {fr(abs(prod - partial))}")


def cmd_fekete(args):
    if args.action == "saw":
        rows = [(n, c, root, fr(best)) for n, c, root, best in fekete.saw_table(args.max_n)]
        _table(rows, args.format)
        return
    e = parse(args.expr, var="n")
    from .expr.evaluate import exact_value

    def seq(n):
        v = exact_value(e, Fraction(n))
        if not isinstance(v, Fraction):
            raise ValueError(f"a_{n} is not rational")
        return v
    rep = fekete.fekete_estimate(seq, args.mode, args.n, strict=not args.report)
    _out(f"certificate: {'ok' if rep.certificate_ok else 'violated'}")
    if rep.violation:
        _out(f"violation: {rep.violation[0]} {rep.violation[1]}")
    bound = rep.bound[-1]
    _out(f"bound: {fr(bound)}")


def cmd_trans(args):
    act = args.action
    if act == "lambda":
        _out("0." + transcendental.liouville_digits(args.digits))
    elif act == "certificate":
        z, q, gap = transcendental.liouville_certificate(args.m)
        _out(f"z: {z}")
        _out(f"q: 10^{len(str(q)) - 1}")
        _out(f"gap-bound: {fr(gap)}")
    elif act == "lower-bound":
        v = transcendental.poly_rational_lower_bound(parse_int_poly(args.poly), as_rational(args.x))
        _out(fr(v))
    elif act == "radius":
        _out(str(transcendental.nonvanishing_radius(parse_int_poly(args.poly),
                                                    as_rational(args.alpha), args.k)))
    elif act == "cantor":
        digits, state = transcendental.cantor_stream(args.polys, args.digits)
        if args.trace:
            for s in state.trace:
                poly = ",".join(map(str, s.poly))
                _out(f"poly: {poly} j: {s.j} l: {s.l} alpha: {fr(s.alpha)} k: {s.k}")
        _out("0." + "".join(map(str, digits)))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-45/11" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="analysis-kernel", description="Exact real-analysis kernel.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    d = sub.add_parser("diff", help="symbolic derivative of an expression in x")
    d.add_argument("expr")
    d.add_argument("--classify", action="store_true", help="print SEF/EF classes")
    d.add_argument("--at", help="also print certified enclosures at this rational point")
    d.add_argument("--bits", type=int, default=53)
    d.set_defaults(fn=cmd_diff)

    t = sub.add_parser("taylor", help="exact Taylor (or Laurent) polynomial at 0")
    t.add_argument("expr", nargs="?")
    t.add_argument("--order", type=int, required=True)
    t.add_argument("--laurent", action="store_true")
    t.add_argument("--reciprocal", action="store_true")
    t.add_argument("--method", choices=("powersum", "newton"), default="powersum")
    t.add_argument("--derive", action="store_true")
    t.add_argument("--antiderive", action="store_true")
    t.add_argument("--shift", help="re-expand around this center")
    t.add_argument("--coeffs", action="store_true", help="also list the coefficients")
    t.add_argument("--base", choices=("Exp", "Sin", "Cos", "Log1p", "LogGeom", "Arctan",
                                      "Arcsin", "Geometric", "PowA"))
    t.add_argument("--power", default="1/2", help="exponent for --base PowA")
    t.add_argument("--remainder-at", help="Lagrange remainder bound at this point")
    t.set_defaults(fn=cmd_taylor)

    li = sub.add_parser("limit", help="limit of f/g as x -> 0")
    li.add_argument("f")
    li.add_argument("g")
    li.add_argument("--order", type=int)
    li.set_defaults(fn=cmd_limit)

    c = sub.add_parser("cfrac", help="continued fractions")
    c.add_argument("action", choices=("encode", "convergents"))
    c.add_argument("value", help="p/q or (a + b*sqrt(n))/c; a CF like '[1; ~2]' for convergents")
    c.add_argument("--max-terms", type=int, default=1000)
    c.add_argument("--k", type=int, default=5)
    c.set_defaults(fn=cmd_cfrac)

    dc = sub.add_parser("decimal", help="periodic decimal codec")
    dc.add_argument("action", choices=("encode", "decode", "partner"))
    dc.add_argument("value")
    dc.set_defaults(fn=cmd_decimal)

    b = sub.add_parser("baseq", help="base-q natural number codec")
    b.add_argument("action", choices=("encode", "decode"))
    b.add_argument("value")
    b.add_argument("--base", type=int, required=True)
    b.set_defaults(fn=cmd_baseq)

    r = sub.add_parser("rat", help="rational arithmetic")
    r.add_argument("op", choices=("add", "sub", "mul", "div", "cmp", "neg"))
    r.add_argument("x")
    r.add_argument("y", nargs="?")
    r.set_defaults(fn=cmd_rat)

    s2 = sub.add_parser("sqrt2", help="Babylonian approximations of sqrt(2)")
    s2.add_argument("--n", type=int, default=4)
    s2.set_defaults(fn=cmd_sqrt2)

    s = sub.add_parser("series", help="infinite series toolkit")
    s.add_argument("action", choices=("sums", "test", "zeta", "bracket", "cauchy", "group",
                                      "rearrange", "gamma", "binomial-domain", "euler"))
    s.add_argument("--terms", default="altharmonic",
                   help="geometric:q, zeta:s, harmonic, altharmonic, leibniz, exp:x, custom:<expr in n>")
    s.add_argument("--kind", choices=("root", "ratio", "ccc", "ncc"), default="root")
    s.add_argument("--window", type=int, default=64)
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--s", default="2")
    s.add_argument("--a", default="exp")
    s.add_argument("--b", default="exp")
    s.add_argument("--exponent", default="1/2", help="binomial exponent for binomial-domain")
    s.add_argument("--size", type=int, default=2)
    s.add_argument("--target", default="0", help="p/q, PlusInf, MinusInf or NoSum")
    s.add_argument("--emit", type=int, default=20)
    s.add_argument("--product", action="store_true", help="rearrange factors of a product")
    s.add_argument("--primes", type=int, default=97)
    s.add_argument("--format", choices=("text", "tsv"), default="text")
    s.set_defaults(fn=cmd_series)

    f = sub.add_parser("fekete", help="Fekete limits and self-avoiding walks")
    f.add_argument("action", choices=("saw", "check"))
    f.add_argument("--max-n", type=int, default=10)
    f.add_argument("--expr", default="n", help="a_n as an expression in n")
    f.add_argument("--mode", choices=fekete.MODES, default=fekete.SUBADDITIVE)
    f.add_argument("--n", type=int, default=20)
    f.add_argument("--report", action="store_true", help="report a violation instead of failing")
    f.add_argument("--format", choices=("text", "tsv"), default="text")
    f.set_defaults(fn=cmd_fekete)

    tr = sub.add_parser("trans", help="constructive transcendental numbers")
    tr.add_argument("action", choices=("lambda", "certificate", "lower-bound", "radius", "cantor"))
    tr.add_argument("--digits", type=int, default=30)
    tr.add_argument("--m", type=int, default=2)
    tr.add_argument("--poly", default="-2,0,1", help="integer coefficients, lowest degree first")
    tr.add_argument("--x", default="3/2")
    tr.add_argument("--alpha", default="0")
    tr.add_argument("--k", type=int)
    tr.add_argument("--polys", type=int, default=10)
    tr.add_argument("--trace", action="store_true")
    tr.set_defaults(fn=cmd_trans)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.fn(args)
    except UsageError as exc:
        print(f"Usage: {exc}", file=sys.stderr)
        return 2
    except KernelError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
