"""partasym command line: exact counts, estimates, comparisons and table reproduction.

Exit codes: 0 success, 2 argument error, 3 reproduction failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

from .asymptotics.estimate import PhiBreakdown, default_config, estimate, leading_digit_agreement
from .exact_oracle import FAMILIES, TABLE_BUDGET, FamilySpec, count, count_table, group_digits
from .reproduce import TABLES, run_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REPRODUCE_FAILED = 3

TEXT_DECIMALS = 5


class UsageError(Exception):
    pass


def _parse_n(text: str) -> tuple[int, int | None]:
    """``N`` or an inclusive range ``A:B``."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return lo, hi
        return int(text), None
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range A:B, got {text!r}")


def _spec(args) -> FamilySpec:
    try:
        return FamilySpec(args.family, args.r)
    except ValueError as exc:
        raise UsageError(str(exc))


def _fmt_int(value: int, grouped: bool) -> str:
    return group_digits(value) if grouped else str(value)


def _fmt_real(value, grouped: bool, decimals: int = TEXT_DECIMALS) -> str:
    s = value.to_fixed(decimals)
    return group_digits(s) if grouped else s


# --------------------------------------------------------------------------
# report serialization

def report_payload(b: PhiBreakdown, config) -> dict:
    """JSON-ready dict; all numbers as decimal strings at full working precision."""
    out = {
        "family": b.family.family,
        "params": {"r": b.family.r} if b.family.family == "nsp" else {},
        "n": b.n,
        "xi": b.xi.to_decimal(),
        "phi": [{"k": k, "value": v.to_decimal()} for k, v in b.terms],
        "total": b.total.to_decimal(),
        "rounded": str(b.rounded),
    }
    if b.exact is not None:
        out["exact"] = str(b.exact)
        out["error"] = b.error.to_decimal()
        out["leading_digits"] = leading_digit_agreement(b.total, b.exact)
    out["digits"] = b.precision
    if b.agreement_digits is not None:
        out["agreement_digits"] = b.agreement_digits
    out["config"] = {"kmax": config.kmax, "terms": config.J, "double_run": config.double_run}
    if b.notes:
        out["notes"] = list(b.notes)
    return out


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def strip_meta(payload: dict) -> dict:
    """Payload without the timing metadata (for comparing runs)."""
    return {k: v for k, v in payload.items() if k != "meta"}


def _render_text(b: PhiBreakdown, grouped: bool) -> str:
    lines = [f"family: {b.family.label}   n: {b.n}   xi: {b.xi.to_fixed(6)}   digits: {b.precision}"]
    label = "q" if b.family.family == "concave" else "Phi"
    width = max(len(_fmt_real(v, grouped)) for _, v in b.terms)
    for k, v in b.terms:
        lines.append(f"  {label}_{k:<3d} {_fmt_real(v, grouped).rjust(width)}")
    lines.append(f"  total    {_fmt_real(b.total, grouped).rjust(width)}")
    lines.append(f"  rounded  {_fmt_int(b.rounded, grouped)}")
    if b.exact is not None:
        lines.append(f"  exact    {_fmt_int(b.exact, grouped)}")
        lines.append(f"  error    {b.error.to_fixed(TEXT_DECIMALS)}")
        lines.append(f"  leading digits correct: {leading_digit_agreement(b.total, b.exact)}")
    if b.agreement_digits is not None:
        lines.append(f"  agreement with +20 digit rerun: {b.agreement_digits} digits")
    for note in b.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# commands

def cmd_exact(args) -> int:
    spec = _spec(args)
    lo, hi = args.n
    if lo < 0:
        raise UsageError("n must be non-negative")
    if hi is None:
        value = count(spec, lo, args.cache_dir)
        if args.format == "json":
            print(dumps({"family": spec.family, "params": {"r": spec.r} if spec.r else {},
                         "n": lo, "exact": str(value)}))
        else:
            print(_fmt_int(value, args.grouped))
        return EXIT_OK
    table = count_table(spec, hi, args.cache_dir)
    if args.format == "json":
        print(dumps({"family": spec.family, "params": {"r": spec.r} if spec.r else {},
                     "n": [lo, hi], "exact": [str(table[i]) for i in range(lo, hi + 1)]}))
    else:
        for i in range(lo, hi + 1):
            print(f"{i}\t{_fmt_int(table[i], args.grouped)}")
    return EXIT_OK


def _run_estimate(args, with_exact):
    spec = _spec(args)
    n, hi = args.n
    if hi is not None:
        raise UsageError("estimate/compare take a single n")
    if n < 0:
        raise UsageError("n must be non-negative")
    try:
        config = default_config(spec, kmax=args.kmax, J=args.terms, precision=args.digits)
        if args.double_run:
            config = replace(config, double_run=True)
        return estimate(spec, n, config, with_exact=with_exact, cache_dir=args.cache_dir), config
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit_report(args, b, config, started) -> None:
    if args.format == "json":
        payload = report_payload(b, config)
        payload["meta"] = {"command": " ".join(args.argv), "elapsed_ms": round((time.perf_counter() - started) * 1000)}
        print(dumps(payload))
    else:
        print(_render_text(b, args.grouped))


def cmd_estimate(args) -> int:
    started = time.perf_counter()
    b, config = _run_estimate(args, with_exact=None)
    _emit_report(args, b, config, started)
    return EXIT_OK


def cmd_compare(args) -> int:
    started = time.perf_counter()
    n = args.n[0]
    if n > TABLE_BUDGET:
        raise UsageError(f"n = {n} exceeds the exact-count budget {TABLE_BUDGET}")
    b, config = _run_estimate(args, with_exact=True)
    _emit_report(args, b, config, started)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    names = TABLES if args.table == "all" else (args.table,)
    results = []
    for name in names:
        results.extend(run_table(name, cache_dir=args.cache_dir))
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        print(dumps({
            "tables": list(names),
            "rows": [{"table": r.table, "id": r.id, "value": r.value, "expected": r.expected,
                      "status": "PASS" if r.passed else "FAIL", "source": r.source,
                      **({"note": r.note} if r.note else {})} for r in results],
            "passed": len(results) - len(failed),
            "failed": len(failed),
        }))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            value, expected = r.value, r.expected
            if args.grouped and r.kind in ("abs", "exact"):
                value, expected = group_digits(value), group_digits(expected)
            line = f"{status}  {r.table:<10} {r.id:<18} {value:>40}   expected {expected} [{r.source}]"
            if r.note:
                line += f"  -- {r.note}"
            print(line)
        print(f"{len(results) - len(failed)} passed, {len(failed)} failed")
    return EXIT_REPRODUCE_FAILED if failed else EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partasym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="directory for on-disk count tables (env PARTASYM_CACHE overrides)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--grouped", action="store_true", help="group digits in blocks of five")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=FAMILIES, required=True)
    fam.add_argument("--r", type=int, help="smallest allowed part (nsp only)")
    fam.add_argument("--n", type=_parse_n, required=True)

    p = sub.add_parser("exact", parents=[common, fam], help="exact counts (n or A:B)")
    p.set_defaults(func=cmd_exact)

    for name, func, help_ in (("estimate", cmd_estimate, "asymptotic estimate with per-term breakdown"),
                              ("compare", cmd_compare, "estimate against the exact count")):
        p = sub.add_parser(name, parents=[common, fam], help=help_)
        p.add_argument("--kmax", type=int, help="number of singular-point classes (concave: correction terms)")
        p.add_argument("--terms", type=int, help="correction terms per Bessel sum")
        p.add_argument("--digits", type=int, help="working precision in decimal digits")
        p.add_argument("--double-run", action="store_true", help="rerun at +20 digits and report agreement")
        p.set_defaults(func=func)

    p = sub.add_parser("reproduce", parents=[common], help="regenerate a reference table and grade each row")
    p.add_argument("--table", choices=TABLES + ("all",), required=True)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"partasym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
