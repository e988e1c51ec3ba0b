"""Command line interface.

Subcommands: integrate, verify, arrangement, onevar.  Output is a single
JSON document on stdout with every rational number rendered exactly as
"a/b"; diagnostics go to stderr.  Exit codes: 0 success, 2 parse error,
3 budget exceeded, 4 strict validity refusal, 5 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import engine, oracle
from .arrangements import LinearForm, StratumSpec, count_stratum_points, stratum_class
from .engine import FormProduct, integrate_general, integrate_onevar, integrate_product
from .errors import (ArcintError, BudgetError, InternalError, ParseError,
                     StrictValidityError)
from .exact import LPolynomial, RationalFunctionL, factorize, is_prime

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_VALIDITY = 4
EXIT_INTERNAL = 5


# ---------------------------------------------------------------------------
# parsing


def _tokenize_form(text):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*":
            tokens.append((ch, pos))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append((("int", int(text[start:pos])), start))
            continue
        if ch == "x":
            start = pos
            pos += 1
            dstart = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if pos == dstart:
                raise ParseError("variable needs an index like x1", start)
            tokens.append((("var", int(text[dstart:pos])), start))
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    return tokens


def parse_form(text, n):
    """One linear form: term (('+'|'-') term)*, term = [int '*'?] var."""
    tokens = _tokenize_form(text)
    if not tokens:
        raise ParseError("empty form", 0)
    coeffs = [0] * n
    idx = 0
    sign = 1
    first = True

    def expect_term(sign):
        nonlocal idx
        coeff = 1
        if idx < len(tokens) and isinstance(tokens[idx][0], tuple) and tokens[idx][0][0] == "int":
            coeff = tokens[idx][0][1]
            idx += 1
            if idx < len(tokens) and tokens[idx][0] == "*":
                idx += 1
        if idx >= len(tokens):
            pos = tokens[-1][1] if tokens else 0
            raise ParseError("expected a variable", pos)
        tok, pos = tokens[idx]
        if not (isinstance(tok, tuple) and tok[0] == "var"):
            raise ParseError("expected a variable", pos)
        var = tok[1]
        if var < 1 or var > n:
            raise ParseError(f"variable x{var} out of range 1..{n}", pos)
        idx += 1
        coeffs[var - 1] += sign * coeff

    while idx < len(tokens):
        tok, pos = tokens[idx]
        if tok == "+":
            if first:
                raise ParseError("form cannot start with '+'", pos)
            idx += 1
            sign = 1
            expect_term(sign)
        elif tok == "-":
            idx += 1
            sign = -1
            expect_term(sign)
            first = False
        else:
            if not first:
                raise ParseError("expected '+' or '-'", pos)
            expect_term(1)
            first = False
    if first:
        raise ParseError("empty form", 0)
    form = LinearForm(coeffs)
    if form.is_zero:
        raise ParseError(f"form {text.strip()!r} is identically zero", 0)
    return form


def parse_forms(text, n):
    """Comma-separated forms into a FormProduct."""
    pieces = [p for p in text.split(",")]
    forms = []
    for piece in pieces:
        if not piece.strip():
            raise ParseError("empty form in list", 0)
        forms.append(parse_form(piece, n))
    return FormProduct(n, forms)


def parse_univariate(text):
    """Univariate integer polynomial, e.g. 'x^2+1' or '2*x^3 - x + 7'."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial", 0)
    coeffs = {}
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    first = True
    while True:
        skip_ws()
        if pos >= len(text):
            if first:
                raise ParseError("empty polynomial", pos)
            break
        sign = 1
        if text[pos] in "+-":
            if first and text[pos] == "+":
                raise ParseError("polynomial cannot start with '+'", pos)
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip_ws()
        elif not first:
            raise ParseError("expected '+' or '-'", pos)
        coeff = None
        if pos < len(text) and text[pos].isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            coeff = int(text[start:pos])
            skip_ws()
            if pos < len(text) and text[pos] == "*":
                pos += 1
                skip_ws()
        exp = 0
        if pos < len(text) and text[pos] == "x":
            pos += 1
            exp = 1
            skip_ws()
            if pos < len(text) and text[pos] == "^":
                pos += 1
                skip_ws()
                start = pos
                while pos < len(text) and text[pos].isdigit():
                    pos += 1
                if start == pos:
                    raise ParseError("expected an exponent after '^'", pos)
                exp = int(text[start:pos])
        elif coeff is None:
            raise ParseError("expected a term", pos)
        coeffs[exp] = coeffs.get(exp, 0) + sign * (1 if coeff is None else coeff)
        first = False
    top = max(coeffs) if coeffs else 0
    return LPolynomial([coeffs.get(e, 0) for e in range(top + 1)])


# ---------------------------------------------------------------------------
# output helpers


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _rf_dict(rf):
    return {"num_coeffs": rf.num_coeffs(), "den_coeffs": rf.den_coeffs()}


def _prime_of(q):
    factors = factorize(q)
    if len(factors) != 1:
        raise ParseError(f"{q} is not a prime power")
    p = factors[0]
    i = 0
    t = q
    while t > 1:
        t //= p
        i += 1
    return p, i


def _parse_int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommands


def _integrate_result(fp, method):
    if method == "strata":
        return integrate_product(fp)
    if method == "general":
        return integrate_general(fp)
    report = engine.classify_validity(fp)
    if report.mixed_char in (engine.MIXED_ALL, engine.MIXED_ODD):
        return integrate_product(fp)
    return integrate_general(fp)


def _cmd_integrate(args):
    fp = parse_forms(args.forms, args.vars)
    result = _integrate_result(fp, args.method)
    doc = {
        "input": {"vars": args.vars, "forms": args.forms},
        "method": result.method,
        "value": _rf_dict(result.value),
        "validity": result.validity.as_dict(),
    }
    if args.eval:
        evals = []
        for q in _parse_int_list(args.eval):
            p, _ = _prime_of(q)
            if args.strict and not result.validity.admits_prime(p):
                raise StrictValidityError(
                    f"q = {q} is outside the certified validity range")
            evals.append({"q": q, "value": _frac_str(result.value.eval_at(q))})
        doc["evaluations"] = evals
    if args.trace_file:
        trace = integrate_product(fp, with_trace=True).trace
        with open(args.trace_file, "w") as fh:
            for node in trace:
                fh.write(json.dumps(node) + "\n")
    return doc


def _cmd_verify(args):
    fp = parse_forms(args.forms, args.vars)
    q = args.q
    p, i = _prime_of(q)
    result = _integrate_result(fp, args.method)
    if args.strict and args.setting != "equalchar" and not result.validity.admits_prime(p):
        raise StrictValidityError(f"q = {q} is outside the certified validity range")
    if args.setting == "zp":
        if i != 1:
            raise ParseError("setting zp needs a prime q")
        bracket = oracle.padic_bracket_zp(fp, p, args.depth)
    elif args.setting == "wq":
        bracket = oracle.padic_bracket_wq(fp, p, i, args.depth)
    else:
        bracket = oracle.equalchar_bracket(fp, q, args.depth)
    value_at_q = result.value.eval_at(q)
    doc = {
        "input": {"vars": args.vars, "forms": args.forms},
        "method": result.method,
        "value": _rf_dict(result.value),
        "validity": result.validity.as_dict(),
        "bracket": {
            "q": q,
            "k": args.depth,
            "setting": args.setting,
            "lower": _frac_str(bracket.lower),
            "upper": _frac_str(bracket.upper),
        },
        "value_at_q": _frac_str(value_at_q),
        "verdict": "CONTAINED" if bracket.contains(value_at_q) else "OUTSIDE",
    }
    return doc


def _cmd_arrangement(args):
    eq = [parse_form(t, args.vars) for t in args.eq.split(",") if t.strip()] if args.eq else []
    neq = [parse_form(t, args.vars) for t in args.neq.split(",") if t.strip()] if args.neq else []
    spec = StratumSpec(args.vars, eq, neq)
    sc = stratum_class(spec)
    doc = {
        "input": {"vars": args.vars, "eq": args.eq or "", "neq": args.neq or ""},
        "class_coeffs": list(sc.poly.coeffs),
        "bad_primes": sorted(sc.bad_primes),
    }
    if args.count_at:
        q = args.count_at
        doc["count_at"] = {
            "q": q,
            "count": count_stratum_points(spec, q),
            "class_value": _frac_str(RationalFunctionL(sc.poly).eval_at(q)),
        }
    return doc


def _cmd_onevar(args):
    poly = parse_univariate(args.poly)
    if not is_prime(args.p):
        raise ParseError(f"{args.p} is not prime")
    result = integrate_onevar(poly, args.p)
    doc = {
        "input": {"poly": args.poly, "p": args.p},
        "degree_multiset": {str(d): c for d, c in sorted(result.cls.counts.items())},
    }
    if args.eval_at:
        evals = []
        for i in _parse_int_list(args.eval_at):
            evals.append({
                "i": i,
                "q": args.p**i,
                "value": _frac_str(result.eval_at(i)),
            })
        doc["evaluations"] = evals
    return doc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="arcint",
        description="Exact motivic integrals of products of linear forms, "
                    "with brute-force p-adic verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("integrate", help="symbolic integral of |product of forms|")
    pi.add_argument("--vars", type=int, required=True)
    pi.add_argument("--forms", required=True)
    pi.add_argument("--method", choices=["auto", "strata", "general"], default="auto")
    pi.add_argument("--eval", help="comma separated prime powers to evaluate at")
    pi.add_argument("--strict", action="store_true",
                    help="refuse evaluations outside the validity report")
    pi.add_argument("--trace-file", help="dump the recursion trace as JSON lines")
    pi.set_defaults(func=_cmd_integrate)

    pv = sub.add_parser("verify", help="compare the symbolic value with an oracle bracket")
    pv.add_argument("--vars", type=int, required=True)
    pv.add_argument("--forms", required=True)
    pv.add_argument("--q", type=int, required=True)
    pv.add_argument("--depth", type=int, required=True)
    pv.add_argument("--setting", choices=["zp", "wq", "equalchar"], default="zp")
    pv.add_argument("--method", choices=["auto", "strata", "general"], default="auto")
    pv.add_argument("--strict", action="store_true")
    pv.set_defaults(func=_cmd_verify)

    pa = sub.add_parser("arrangement", help="class of a hyperplane arrangement stratum")
    pa.add_argument("--vars", type=int, required=True)
    pa.add_argument("--eq", help="forms required to vanish")
    pa.add_argument("--neq", help="forms required not to vanish")
    pa.add_argument("--count-at", type=int, help="brute-force count over F_q")
    pa.set_defaults(func=_cmd_arrangement)

    po = sub.add_parser("onevar", help="one-variable integral of |f|")
    po.add_argument("--poly", required=True)
    po.add_argument("--p", type=int, required=True)
    po.add_argument("--eval-at", help="comma separated extension degrees i")
    po.set_defaults(func=_cmd_onevar)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except StrictValidityError as exc:
        print(f"validity refusal: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except InternalError as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ArcintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(doc, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
