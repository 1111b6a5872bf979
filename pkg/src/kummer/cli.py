"""Command-line front end: ``kummer eval|coeffs|check|table``.

Exit status is 0 on success, 1 for usage errors, 2 for parameters outside
the supported domain and 3 for numerical failures.  Numbers are printed
with Python's locale-independent formatting.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from typing import Optional, Sequence

from . import __version__
from .coefficients import DEFAULT_TERMS, MAX_TERMS, Which, coefficient_set
from .errors import DomainError, KummerError, UsageError
from .evaluation import eval_M, eval_M_scaled, eval_U, eval_U_scaled
from .scaling import DEFAULT_RHO, Parameters, scale, scale_shifted
from .verify import error_table, oracle_M, oracle_U, recurrence_residual, wronskian_residual

TERMS_ENV = "KUMMER_TERMS"


class _Parser(argparse.ArgumentParser):
    """argparse raises instead of exiting so that ``run`` owns the exit codes."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n\n{self.format_usage()}")


def _terms(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid term count {text!r}") from None
    if not 0 <= n <= MAX_TERMS:
        raise argparse.ArgumentTypeError(f"term count must be in [0, {MAX_TERMS}], got {n}")
    return n


def _default_terms() -> int:
    raw = os.environ.get(TERMS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TERMS
    try:
        return _terms(raw.strip())
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{TERMS_ENV}: {exc}") from None


def _number_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list:
    return [_terms(x.strip()) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kummer", description="Kummer functions M(a,b,z) and U(a,b+1,z) by uniform asymptotic expansions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt_default="text", fmts=("text", "json")):
        p.add_argument("--terms", "-N", type=_terms, default=None, help=f"highest order n kept (0..{MAX_TERMS}; default {DEFAULT_TERMS} or ${TERMS_ENV})")
        p.add_argument("--format", choices=fmts, default=fmt_default)

    def abz(p):
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--b", type=float, required=True, help="for --which u this is the b of U(a, b+1, z)")
        p.add_argument("--z", type=float, required=True)

    p_eval = sub.add_parser("eval", help="evaluate M(a,b,z) or U(a,b+1,z)")
    p_eval.add_argument("--which", type=str.upper, choices=["M", "U"], required=True)
    abz(p_eval)
    p_eval.add_argument("--scaled", action="store_true", help="print the scaled function instead")
    p_eval.add_argument("--rho", type=float, default=DEFAULT_RHO, help="saddle-point bound for the domain check")
    common(p_eval, fmts=("text", "json", "csv"))

    p_coef = sub.add_parser("coeffs", help="dump normalised expansion coefficients")
    p_coef.add_argument("--which", type=str.upper, choices=["M", "U"], required=True)
    abz(p_coef)
    common(p_coef, fmt_default="json", fmts=("text", "json", "csv"))

    p_check = sub.add_parser("check", help="recurrence and Wronskian residuals at one point")
    abz(p_check)
    p_check.add_argument("--oracle", action="store_true", help="also compare M(a,b,z) and U(a,b+1,z) with the extended-precision oracles")
    p_check.add_argument("--precision-digits", type=int, default=30)
    common(p_check, fmts=("text", "json", "csv"))

    p_table = sub.add_parser("table", help="residual tables")
    p_table.add_argument("--id", dest="table_id", choices=["table1", "table2"], required=True)
    p_table.add_argument("--z", type=float, default=None)
    p_table.add_argument("--a-list", type=_number_list, default=None)
    p_table.add_argument("--b-list", type=_number_list, default=None)
    p_table.add_argument("--n-list", type=_int_list, default=None)
    p_table.add_argument("--format", choices=("csv", "text", "json"), default="csv")
    return parser


def _csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _text(d: dict) -> str:
    width = max(len(k) for k in d)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in d.items()) + "\n"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def _plain(d: dict) -> dict:
    """Convert numpy scalars so that json.dumps emits shortest round-trip reprs."""
    out = {}
    for k, v in d.items():
        if isinstance(v, (list, tuple)):
            out[k] = [float(x) for x in v]
        elif isinstance(v, (bool, int, str)) or v is None:
            out[k] = v
        else:
            out[k] = float(v)
    return out


def _emit(records: list, fmt: str, out) -> None:
    records = [_plain(r) for r in records]
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        out.write(json.dumps(payload, allow_nan=False) + "\n")
    elif fmt == "csv":
        flat = [{k: (" ".join(repr(x) for x in v) if isinstance(v, list) else v) for k, v in r.items()} for r in records]
        out.write(_csv(flat))
    else:
        out.write("\n".join(_text(r) for r in records))


def _cmd_eval(args, out) -> None:
    p = Parameters(args.a, args.b, args.z)
    fn = {
        ("M", False): eval_M,
        ("M", True): eval_M_scaled,
        ("U", False): eval_U,
        ("U", True): eval_U_scaled,
    }[(args.which, args.scaled)]
    r = fn(p, args.terms, args.rho)
    name = ("Mt" if args.scaled else "M") if args.which == "M" else ("Ut" if args.scaled else "U")
    label = f"{name}({args.a!r}, {args.b!r}, {args.z!r})" if args.which == "M" else f"{name}({args.a!r}, {args.b!r}+1, {args.z!r})"
    rec = {"function": label, **r.to_dict()}
    if args.format == "json":
        rec.pop("function")
    _emit([rec], args.format, out)


def _cmd_coeffs(args, out) -> None:
    p = Parameters(args.a, args.b, args.z)
    sp = scale(p) if args.which == "M" else scale_shifted(p)
    _emit([coefficient_set(args.which, sp, args.terms).to_dict()], args.format, out)


def _cmd_check(args, out) -> None:
    p = Parameters(args.a, args.b, args.z)
    records = []
    for kind, fn in (
        ("recurrence_M", lambda: recurrence_residual(Which.M, p, args.terms)),
        ("recurrence_U", lambda: recurrence_residual(Which.U, p, args.terms)),
        ("wronskian", lambda: wronskian_residual(p, args.terms)),
    ):
        # One member of a relation may leave the domain (U(a, b-1, z) needs b > 1)
        # while the others are still meaningful.
        try:
            records.append({**vars(fn()), "note": ""})
        except DomainError as exc:
            records.append({"kind": kind, "a": p.a, "b": p.b, "z": p.z, "N": args.terms, "residual": None, "note": str(exc)})
    if all(r["residual"] is None for r in records):
        raise DomainError(records[0]["note"])
    if args.oracle:
        for which, ev, oracle, q in (
            ("oracle_M", eval_M, oracle_M, p),
            ("oracle_U", eval_U, oracle_U, Parameters(p.a, p.b + 1.0, p.z)),
        ):
            r = ev(p, args.terms)
            ref = oracle(q, args.precision_digits)
            err = abs(math.expm1(r.log_magnitude - float(ref.log_magnitude)))
            records.append({"kind": which, "a": p.a, "b": p.b, "z": p.z, "N": args.terms, "residual": err, "note": ""})
    _emit(records, args.format, out)


def _cmd_table(args, out) -> None:
    rep = error_table(args.table_id, z=args.z, a_list=args.a_list, b_list=args.b_list, n_list=args.n_list)
    if args.format == "csv":
        out.write(rep.to_csv())
    elif args.format == "json":
        out.write(json.dumps(rep.to_dict()) + "\n")
    else:
        out.write(rep.to_text())


_COMMANDS = {"eval": _cmd_eval, "coeffs": _cmd_coeffs, "check": _cmd_check, "table": _cmd_table}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Run the CLI on ``argv`` and return the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "terms", 0) is None:
            args.terms = _default_terms()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            _COMMANDS[args.command](args, out)
        seen = set()
        for w in caught:
            msg = str(w.message)
            if msg not in seen:
                seen.add(msg)
                err.write(f"warning: {msg}\n")
        return 0
    except KummerError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
