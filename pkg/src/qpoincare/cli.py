"""Command-line front end.

    qpoincare run --p 3 --suite hopf --seed 0 --format json
    qpoincare export dmatrix --p 5 --format csv --lambda-plus 1 --lambda-minus 1
    qpoincare export gram --p 3 --space M --format csv
    qpoincare parse "eta-*eta+" --p 3 --side A

Exit status: 0 when every assertion passes, 1 when one fails, 2 on a usage error.
A bare ``qpoincare --p 3 --suite all`` is read as ``run``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

COMMANDS = ("run", "export", "parse")


class UsageError(Exception):
    pass


def _odd_p(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be an integer, got {text!r}")
    if p < 3 or p % 2 == 0:
        raise argparse.ArgumentTypeError(f"p must be an odd integer >= 3 (q is a root of unity of odd order), got {p}")
    return p


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number like 3/2, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpoincare", description="Exact verification of E_q(1,1) at odd roots of unity.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run verification suites")
    run.add_argument("--p", type=_odd_p, required=True)
    run.add_argument("--suite", choices=("hopf", "duality", "integral", "forms", "repr", "all"), default="all")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--output", help="write the report here instead of stdout")

    exp = sub.add_parser("export", help="export a matrix or table")
    exp.add_argument("kind", choices=("dmatrix", "gram", "pairing"))
    exp.add_argument("--p", type=_odd_p, required=True)
    exp.add_argument("--format", choices=("json", "csv"), default="json")
    exp.add_argument("--space", choices=("SO", "M", "A"), default="M", help="Gram matrix space")
    exp.add_argument("--lambda-plus", type=_rational)
    exp.add_argument("--lambda-minus", type=_rational)
    exp.add_argument("--numeric", action="store_true", help="dmatrix: complex coefficients at the given lambda")
    exp.add_argument("--output")

    prs = sub.add_parser("parse", help="normal form of an expression")
    prs.add_argument("expression")
    prs.add_argument("--p", type=_odd_p, required=True)
    prs.add_argument("--side", choices=("A", "U"))
    return parser


# -- reports ------------------------------------------------------------------------------


def report_json(checks) -> str:
    rows = [c.as_dict() for c in sorted(checks, key=lambda c: c.assertion_id)]
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def report_csv(checks) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["assertion_id", "paper_anchor", "status", "detail"])
    for c in sorted(checks, key=lambda c: c.assertion_id):
        w.writerow([c.assertion_id, c.paper_anchor, c.status, c.detail])
    return buf.getvalue()


# -- exports -------------------------------------------------------------------------------


def _lambda_pair(args):
    lp, lm = args.lambda_plus, args.lambda_minus
    if (lp is None) != (lm is None):
        raise UsageError("give both --lambda-plus and --lambda-minus, or neither")
    if lp is not None and lp == 0 and lm == 0:
        raise UsageError("lambda = (0, 0) does not define an irreducible representation")
    return lp, lm


def export_dmatrix(p: int, fmt: str, lam_plus=None, lam_minus=None, numeric: bool = False) -> str:
    from .representations import universal_T_rep
    from .reduced import render_a_key

    if fmt == "csv":
        numeric = True
    if numeric and lam_plus is None:
        raise UsageError("numeric export needs --lambda-plus and --lambda-minus")
    d = universal_T_rep(p, lam_plus, lam_minus) if lam_plus is not None else universal_T_rep(p)
    if not numeric:
        return d.to_json() + "\n"
    # the rational lambdas are already substituted, so the entries are parameter-free
    values = d.numeric({})
    if fmt == "json":
        rows = [[{render_a_key(k): [c.real, c.imag] for k, c in sorted(e.items())} for e in r] for r in values]
        return json.dumps(rows, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "monomial", "re", "im"])
    for m, r in enumerate(values):
        for n, e in enumerate(r):
            for k in sorted(e):
                c = e[k]
                w.writerow([m, n, render_a_key(k), repr(c.real), repr(c.imag)])
    return buf.getvalue()


def export_gram(p: int, space: str, fmt: str) -> str:
    from .invariants import gram_csv, gram_matrix

    if fmt == "csv":
        return gram_csv(p, space)
    keys, g = gram_matrix(p, space)
    basis = ["eta+^%d eta-^%d delta^%d" % k for k in keys]
    return json.dumps({"basis": basis, "matrix": [[v.render() for v in r] for r in g]}, indent=None) + "\n"


def export_pairing(p: int, fmt: str) -> str:
    from .duality import reduced_pairing_matrix
    from .quantum_algebra import render_u_key

    rows, cols, matrix = reduced_pairing_matrix(p)
    row_names = [render_u_key(k) for k in rows]
    col_names = ["eta+^%d eta-^%d zeta(%d)" % c for c in cols]
    cells = [[v.render() for v in r] for r in matrix]
    if fmt == "json":
        return json.dumps({"rows": row_names, "columns": col_names, "matrix": cells}) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pairing"] + col_names)
    for name, r in zip(row_names, cells):
        w.writerow([name] + r)
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in COMMANDS and argv[0] not in ("-h", "--help"):
        argv.insert(0, "run")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "run":
            from .suites import run_suite

            checks = run_suite(args.p, args.suite, args.seed)
            text = report_json(checks) if args.format == "json" else report_csv(checks)
            _emit(text, args.output)
            failed = [c for c in checks if not c.passed]
            print(f"{len(checks) - len(failed)}/{len(checks)} assertions passed", file=sys.stderr)
            return 1 if failed else 0
        if args.command == "export":
            if args.kind == "dmatrix":
                lp, lm = _lambda_pair(args)
                text = export_dmatrix(args.p, args.format, lp, lm, args.numeric)
            elif args.kind == "gram":
                text = export_gram(args.p, args.space, args.format)
            else:
                text = export_pairing(args.p, args.format)
            _emit(text, args.output)
            return 0
        from .parser import ParseError, parse

        try:
            value = parse(args.expression, args.p, args.side)
        except ParseError as exc:
            print(args.expression, file=sys.stderr)
            print(" " * exc.pos + "^", file=sys.stderr)
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(value.render())
        return 0
    except UsageError as exc:
        print(f"qpoincare: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qpoincare: I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
