"""Command-line front end.

    k3vw coeffs --n-max 10 --format csv
    k3vw invariant --family su_r --r 2 --n-min 0 --n-max 2 --format json
    k3vw exact --n-min 1 --n-max 50 --terms 100 --precision 256
    k3vw asymp --family twisted --p 2 --rho 1 --n-min 10 --n-max 40
    k3vw turan --family su_p --p 3 --w-squared 6 --d 3 --n-min 1 --n-max 200
    k3vw verify --suite small --threads 4

Exit status: 0 success, 1 verification failure (or an unresolved exact
sum), 2 usage error.  Output is assembled in memory and written in one go,
so a failing run never leaves a partial file behind.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from functools import partial

import mpmath

from .asymptotics import asymptotic_precision, asymptotic_report, main_term_a, main_term_family, relative_error
from .cyclotomic import CyclotomicValue
from .invariants import InvariantFamily, alpha, is_prime
from .parallel import ordered_map
from .qseries import eta_inv24_table, shared_table
from .rademacher import a_exact, a_resolved
from .turan import turan_scan
from .verify import SUITES, run_suite

FAMILY_FLAGS = {
    "su_r": {"r"},
    "su_p": {"p", "w_squared", "zero_class"},
    "twisted": {"p", "rho"},
}
APPROX_BITS = 96


class UsageError(Exception):
    pass


# -- serialisation ------------------------------------------------------------

def _exact(x) -> str:
    """Integers and rationals as decimal strings, "num/den" when not integral."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _real(x, bits: int) -> str:
    return mpmath.nstr(x, max(int(bits * 0.30103), 1))


def _cyclotomic(v: CyclotomicValue, bits: int = APPROX_BITS) -> dict:
    z = v.to_complex(bits)
    return {
        "p": v.order // 2,
        "coeffs": [_exact(c) for c in v.coeffs],
        "approx_re": _real(z.real, bits),
        "approx_im": _real(z.imag, bits),
        "precision": bits,
    }


def _flatten(record: dict) -> dict:
    # CSV cells: nested cyclotomic values spread over columns, lists joined by ';'
    out = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for sub, inner in value.items():
                out[f"{key}_{sub}"] = ";".join(inner) if isinstance(inner, list) else inner
        elif isinstance(value, list):
            out[key] = ";".join(str(x) for x in value)
        elif isinstance(value, bool):
            out[key] = "true" if value else "false"
        elif value is None:
            out[key] = ""
        else:
            out[key] = value
    return out


def render(records: list[dict], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "json":
        for rec in records:
            buf.write(json.dumps(rec, separators=(",", ":")) + "\n")
        return buf.getvalue()
    rows = [_flatten(r) for r in records]
    fields: list[str] = []
    for row in rows:
        fields += [k for k in row if k not in fields]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".k3vw-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- per-n work (module level so worker processes can run it) ------------------

def _invariant_record(family: InvariantFamily, n: int) -> dict:
    value = alpha(family, n)
    if isinstance(value, CyclotomicValue):
        rec = {"n": n, "family": family.label, "value": _cyclotomic(value)}
        rec["real"] = value.is_rational()
        return rec
    return {"n": n, "family": family.label, "value": _exact(value)}


def _exact_record(terms: int | None, precision: int | None, n: int) -> dict:
    table = shared_table(n)
    try:
        res = a_exact(n, terms, precision) if terms else a_resolved(n, precision=precision)
    except ArithmeticError as err:
        return {"n": n, "status": "unresolved", "error": str(err)}
    return {
        "n": n,
        "terms": res.terms_used,
        "precision": res.precision,
        "approximation": _real(res.approximation, min(res.precision, 256)),
        "rounded": str(res.rounded),
        "residual": mpmath.nstr(res.residual, 6),
        "status": res.status,
        "matches_table": res.rounded == table[n],
    }


def _asymp_record(family: InvariantFamily | None, precision: int | None, corrected: bool, n: int) -> dict:
    if family is None:
        prec = precision or asymptotic_precision(n)
        main = main_term_a(n, prec)
        value = shared_table(n)[n]
        err = relative_error(value, main, prec)
        return {
            "n": n,
            "family": "a",
            "exact": str(value),
            "main_term": mpmath.nstr(main, 30),
            "relative_error": mpmath.nstr(err, 10),
            "precision": prec,
        }
    rep = asymptotic_report(family, n, precision=precision, corrected=corrected)
    fallback = main_term_family(family, n, rep.precision, corrected).fallback
    exact = _cyclotomic(rep.exact) if isinstance(rep.exact, CyclotomicValue) else _exact(rep.exact)
    return {
        "n": n,
        "family": family.label,
        "case": rep.case,
        "exact": exact,
        "main_term": mpmath.nstr(rep.main_term, 30),
        "relative_error": None if rep.relative_error is None else mpmath.nstr(rep.relative_error, 10),
        "observed_constant": None if rep.observed_constant is None else mpmath.nstr(rep.observed_constant, 10),
        "fallback_main_term": None if fallback is None else mpmath.nstr(fallback, 30),
        "precision": rep.precision,
    }


# -- argument handling --------------------------------------------------------

def _family_args(p: argparse.ArgumentParser, required: bool = True, allow_a: bool = False) -> None:
    choices = ["su_r", "su_p", "twisted"] + (["a"] if allow_a else [])
    p.add_argument("--family", choices=choices, required=required, default="a" if allow_a else None)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--w-squared", type=int)
    p.add_argument("--zero-class", action="store_true")
    p.add_argument("--rho", type=int)


def _common(p: argparse.ArgumentParser, n_min: int | None = None) -> None:
    p.add_argument("--n-min", type=int, default=n_min, required=n_min is None)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", help="file to write (default stdout)")


def _threads(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=1, help="worker processes; output is identical for any value")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="k3vw", description="Coefficients of eta^-24 and Vafa-Witten invariants of K3 surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="table of a(n)")
    _common(p, n_min=-1)

    p = sub.add_parser("invariant", help="closed-form invariants of one family")
    _family_args(p)
    _common(p)
    _threads(p)

    p = sub.add_parser("exact", help="a(n) from the convergent exact formula")
    _common(p, n_min=1)
    p.add_argument("--terms", type=int, help="fixed number K of k-terms (default: doubling policy)")
    p.add_argument("--precision", type=int, help="working precision in bits")
    _threads(p)

    p = sub.add_parser("asymp", help="main terms and relative errors")
    _family_args(p, required=False, allow_a=True)
    _common(p)
    p.add_argument("--precision", type=int)
    p.add_argument("--corrected", action="store_true", help="use the index-corrected main term")
    _threads(p)

    p = sub.add_parser("turan", help="Jensen polynomial hyperbolicity scan")
    _family_args(p)
    _common(p, n_min=1)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--subsequence", choices=["n", "pn", "p2n"])
    p.add_argument("--no-hankel", action="store_true")

    p = sub.add_parser("verify", help="acceptance checks")
    p.add_argument("--suite", choices=sorted(SUITES), default="small")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output")
    _threads(p)
    return parser


def family_from_args(args) -> InvariantFamily | None:
    kind = args.family
    if kind in (None, "a"):
        for flag in ("r", "p", "w_squared", "rho"):
            if getattr(args, flag, None) is not None:
                raise UsageError(f"--{flag.replace('_', '-')} needs --family su_r, su_p or twisted")
        if getattr(args, "zero_class", False):
            raise UsageError("--zero-class needs --family su_p")
        return None
    allowed = FAMILY_FLAGS[kind]
    for flag in ("r", "p", "w_squared", "rho", "zero_class"):
        value = getattr(args, flag)
        if flag not in allowed and value not in (None, False):
            raise UsageError(f"--{flag.replace('_', '-')} does not apply to --family {kind}")
    if kind == "su_r":
        if args.r is None or args.r < 1:
            raise UsageError("--r must be a positive integer for --family su_r")
        return InvariantFamily.su_r(args.r)
    if args.p is None or not is_prime(args.p):
        raise UsageError(f"--p must be a prime for --family {kind}")
    if kind == "su_p":
        w2 = args.w_squared if args.w_squared is not None else 0
        if w2 < 0:
            raise UsageError("--w-squared must be >= 0")
        if args.zero_class and w2 % (2 * args.p):
            raise UsageError("--zero-class requires --w-squared divisible by 2p")
        return InvariantFamily.su_p(args.p, w2, args.zero_class)
    if args.rho is None or not 1 <= args.rho <= 22:
        raise UsageError("--rho must be between 1 and 22 for --family twisted")
    return InvariantFamily.twisted(args.p, args.rho)


def validate(args) -> InvariantFamily | None:
    if getattr(args, "threads", 1) < 1:
        raise UsageError("--threads must be >= 1")
    if args.command == "verify":
        return None
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    if args.command == "coeffs" and args.n_min < -1:
        raise UsageError("--n-min must be >= -1")
    if args.command in ("exact", "asymp") and args.n_min < 1:
        raise UsageError("--n-min must be >= 1")
    if getattr(args, "terms", None) is not None and args.terms < 1:
        raise UsageError("--terms must be >= 1")
    if getattr(args, "precision", None) is not None and args.precision < 64:
        raise UsageError("--precision must be >= 64 bits")
    if args.command == "turan" and args.d < 1:
        raise UsageError("--d must be >= 1")
    family = family_from_args(args) if hasattr(args, "family") else None
    if args.command == "turan":
        if family.kind == "su_r" and args.subsequence not in (None, "n"):
            raise UsageError("--subsequence must be n for --family su_r")
        if family.kind == "twisted" and args.subsequence not in (None, "pn"):
            raise UsageError("--subsequence must be pn for --family twisted")
    return family


def execute(args, family) -> tuple[list[dict], int]:
    ns = range(args.n_min, args.n_max + 1) if hasattr(args, "n_max") else range(0)
    workers = getattr(args, "threads", 1)
    if args.command == "coeffs":
        table = eta_inv24_table(max(args.n_max, 0))
        return [{"n": n, "a_n": str(table[n])} for n in ns], 0
    if args.command == "invariant":
        return ordered_map(partial(_invariant_record, family), ns, workers), 0
    if args.command == "exact":
        shared_table(args.n_max)
        recs = ordered_map(partial(_exact_record, args.terms, args.precision), ns, workers)
        bad = any(r["status"] != "resolved" or not r.get("matches_table", False) for r in recs)
        return recs, 1 if bad else 0
    if args.command == "asymp":
        return ordered_map(partial(_asymp_record, family, args.precision, args.corrected), ns, workers), 0
    if args.command == "turan":
        report = turan_scan(family, args.d, args.n_min, args.n_max, args.subsequence, hankel=not args.no_hankel)
        return [report.as_dict()], 0
    results = run_suite(args.suite, workers)
    recs = [{"criterion": r.criterion, "check": r.name, "status": r.status, "detail": r.detail} for r in results]
    return recs, 0 if all(r.passed for r in results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        family = validate(args)
    except (UsageError, ValueError) as err:
        parser.error(str(err))
    try:
        records, status = execute(args, family)
    except ValueError as err:
        print(f"k3vw: error: {err}", file=sys.stderr)
        return 2
    emit(render(records, args.format), args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
