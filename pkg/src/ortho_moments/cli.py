"""Command-line front end.

Exit codes: 0 success / PASS, 1 verification failure, 2 resource limit,
3 usage or parse error, 4 domain error (parity, n out of range, singular
Gram matrix).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import closed_forms as cf
from .errors import (
    ContractError,
    DomainError,
    GramSingularError,
    OrthoMomentsError,
    ParityError,
    ResourceLimitError,
)
from .exact_arith import render, to_json
from .monte_carlo import mc_integral
from .pairings import Pairing
from .two_by_two import verify_conjecture_even, verify_conjecture_odd
from .verify import Budget, PropertyId, verify
from .weingarten import integral_oracle, oracle_limit, weingarten_entry, weingarten_matrix

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3, 4


class ParseError(ContractError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UsageError(Exception):
    pass


_DIGITS = re.compile(r"[0-9]+")


def parse_matrix(text: str) -> list[list[int]]:
    """Read ``"2,0;0,2"``: rows separated by ';', entries by ','."""
    if not text.strip():
        raise ParseError("empty matrix", 0)
    rows, offset = [], 0
    for chunk in text.split(";"):
        row, pos = [], offset
        for token in chunk.split(","):
            stripped = token.strip()
            if not _DIGITS.fullmatch(stripped):
                at = pos + len(token) - len(token.lstrip())
                raise ParseError(f"expected a nonnegative integer, got {stripped!r}", at)
            row.append(int(stripped))
            pos += len(token) + 1
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"ragged row of length {len(row)} (expected {len(rows[0])})", offset)
        rows.append(row)
        offset += len(chunk) + 1
    return rows


def render_matrix(a) -> str:
    return ";".join(",".join(str(x) for x in row) for row in a)


def parse_vector(text: str) -> list[int]:
    return parse_matrix(text)[0] if ";" not in text else _reject_rows(text)


def _reject_rows(text):
    raise ParseError("expected a single row", text.index(";"))


def parse_n_range(text: str) -> list[int]:
    """``"N"`` or inclusive ``"lo:hi"``."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ParseError(f"bad n range {text!r}", 0) from None
    if lo < 2 or hi < lo:
        raise ParseError(f"n range {text!r} must satisfy 2 <= lo <= hi", 0)
    return list(range(lo, hi + 1))


# -- output -------------------------------------------------------------------


def _emit_value(args, label, value: Fraction, method, n, k):
    if args.format == "json":
        print(json.dumps({"value": to_json(value), "method": method, "n": n, "k": k}, sort_keys=True))
    elif args.format == "csv":
        print("quantity,n,k,method,value")
        print(f"{label},{n},{k},{method},{render(value)}")
    else:
        print(f"{label} = {render(value)}")


def _emit_report(args, report):
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True))
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        print(report.summary())
    if report.failures:
        return EXIT_FAIL
    if report.errors:
        return EXIT_RESOURCE
    return EXIT_OK


# -- subcommands ----------------------------------------------------------------


def _half_degree(a):
    total = sum(map(sum, a))
    return None if total % 2 else total // 2


def _closed_integral(a, n):
    if not cf.admissible(a):
        return Fraction(0)
    if len(a) > 2:
        raise DomainError("closed forms cover at most two rows")
    if n == 2 and len(a[0]) <= 2:
        padded = [list(r) + [0] * (2 - len(r)) for r in a] + [[0, 0]] * (2 - len(a))
        (p, q), (r, s) = padded
        return cf.integral_n2(p, q, r, s)
    if any(x % 2 for row in a for x in row):
        raise ParityError("closed forms need even exponents (or n = 2 with a 2x2 matrix)")
    top = a[0]
    bottom = a[1] if len(a) == 2 else [0] * len(top)
    return cf.integral_two_row([x // 2 for x in top], [x // 2 for x in bottom], n)


def cmd_integral(args):
    a = parse_matrix(args.matrix)
    k = _half_degree(a)
    label = f"I({render_matrix(a)}; n={args.n})"
    method = args.method
    if method == "auto":
        if not cf.admissible(a):
            method = "closed"
        elif len(a) <= 2 and all(x % 2 == 0 for row in a for x in row):
            method = "closed"
        elif k is not None and k <= oracle_limit():
            method = "oracle"
        else:
            print(f"warning: half-degree {k} exceeds the oracle limit; using Monte Carlo", file=sys.stderr)
            method = "mc"
    if method == "mc":
        return _run_mc(args, a)
    if method == "closed":
        value = _closed_integral(a, args.n)
    else:
        singular = "project" if args.method == "auto" else args.singular
        value = integral_oracle(a, args.n, singular=singular)
    _emit_value(args, label, value, method, args.n, k)
    return EXIT_OK


def cmd_oracle(args):
    a = parse_matrix(args.matrix)
    value = integral_oracle(a, args.n, singular=args.singular)
    _emit_value(args, f"I({render_matrix(a)}; n={args.n})", value, "oracle", args.n, _half_degree(a))
    return EXIT_OK


def cmd_phi(args):
    a, b = parse_vector(args.a), parse_vector(args.b)
    if len(a) != len(b):
        raise ParseError(f"--a has {len(a)} entries but --b has {len(b)}", 0)
    if any(x % 2 for x in a + b):
        raise ParityError("phi is defined for even exponents only")
    value = cf.phi_two_row([x // 2 for x in a], [x // 2 for x in b], args.n)
    label = f"phi({render_matrix([a])} / {render_matrix([b])}; n={args.n})"
    _emit_value(args, label, value, "closed", args.n, (sum(a) + sum(b)) // 2)
    return EXIT_OK


def cmd_moments(args):
    value = cf.joint_moments(args.alpha, args.beta, args.n)
    label = f"E[x^{args.alpha} y^{args.beta}; n={args.n}]"
    _emit_value(args, label, value, "closed", args.n, (args.alpha + args.beta) // 2)
    return EXIT_OK


def cmd_weingarten(args):
    if args.entry:
        p, s = (Pairing.parse(t) for t in args.entry)
        value = weingarten_entry(args.k, args.n, p, s)
        _emit_value(args, f"W({p}, {s}; n={args.n})", value, "oracle", args.n, args.k)
        return EXIT_OK
    pairings, rows = weingarten_matrix(args.k, args.n)
    if args.format == "json":
        print(json.dumps({"k": args.k, "n": args.n, "pairings": [str(p) for p in pairings],
                          "matrix": [[to_json(x) for x in row] for row in rows]}, sort_keys=True))
    elif args.format == "csv":
        print("," + ",".join(str(p) for p in pairings))
        for p, row in zip(pairings, rows):
            print(f"{p}," + ",".join(render(x) for x in row))
    else:
        width = max(len(render(x)) for row in rows for x in row)
        for p, row in zip(pairings, rows):
            print(f"{str(p):<{4 * args.k + 2}} " + " ".join(render(x).rjust(width) for x in row))
    return EXIT_OK


def _run_mc(args, a):
    est = mc_integral(a, args.n, args.samples, args.seed)
    if args.format == "json":
        print(json.dumps(est.to_json() | {"method": "mc", "n": args.n}, sort_keys=True))
    elif args.format == "csv":
        print("mean,stderr,samples,seed")
        print(f"{est.mean!r},{est.standard_error!r},{est.samples},{est.seed}")
    else:
        print(f"I({render_matrix(a)}; n={args.n}) ~ {est.mean:.6g} +/- {est.standard_error:.2g} "
              f"({est.samples} samples, seed {est.seed})")
    return EXIT_OK


def cmd_mc(args):
    return _run_mc(args, parse_matrix(args.matrix))


def cmd_verify(args):
    budget = Budget(max_cols=args.max_cols, max_degree=args.max_degree, trials=args.trials,
                    max_entry=args.max_entry, n_values=tuple(parse_n_range(args.n)) if args.n else None)
    return _emit_report(args, verify(PropertyId(args.property), budget, seed=args.seed))


def cmd_conjecture(args):
    ns = parse_n_range(args.n)
    if args.which == "even":
        report = verify_conjecture_even(args.max_entry, ns)
    else:
        report = verify_conjecture_odd(args.max_sum, ns)
    return _emit_report(args, report)


# -- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_format(p, default="text"):
    p.add_argument("--format", choices=("text", "json", "csv"), default=default)
    p.add_argument("--text", dest="format", action="store_const", const="text")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.add_argument("--csv", dest="format", action="store_const", const="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ortho-moments", description="Exact polynomial integrals over O_n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("integral", help="I(a) by closed form, oracle or Monte Carlo")
    p.add_argument("--matrix", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("closed", "oracle", "auto", "mc"), default="auto")
    p.add_argument("--singular", choices=("refuse", "project"), default="refuse")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("oracle", help="I(a) from the Weingarten formula")
    p.add_argument("--matrix", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--singular", choices=("refuse", "project"), default="refuse")
    _add_format(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("phi", help="normalised two-row integral (literal even exponents)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("moments", help="joint moments of two entries in generic position")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("weingarten", help="Weingarten matrix or one of its entries")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--entry", nargs=2, metavar=("PI", "SIGMA"))
    _add_format(p)
    p.set_defaults(func=cmd_weingarten)

    p = sub.add_parser("mc", help="Monte Carlo estimate of I(a)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("verify", help="sweep one identity")
    p.add_argument("property", choices=[x.value for x in PropertyId])
    p.add_argument("--max-degree", type=int)
    p.add_argument("--max-entry", type=int)
    p.add_argument("--max-cols", type=int, default=3)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", help="override sample points, 'N' or 'lo:hi'")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="check a conjectured 2x2 sum against f")
    p.add_argument("which", choices=("even", "odd"))
    p.add_argument("--max-entry", type=int, default=6)
    p.add_argument("--max-sum", type=int, default=10)
    p.add_argument("--n", default="4:8")
    _add_format(p, default="json")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParityError, DomainError, GramSingularError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ContractError, OrthoMomentsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
