"""Command-line front end: verify, growth, series, fit, reproduce.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .hilbert import (
    InsufficientDataError,
    NotAHilbertSeriesError,
    UndefinedSeriesError,
    denominator_hypotheses,
    expand,
    fit_numerator,
    gkdim_from_series,
    parse_series,
    pole_multiplicity_at_one,
    search_fit,
)
from .identities import verify_all
from .polyring import UnsupportedFieldError, parse_field
from .reproduce import reproduce
from .spandim import ALGEBRAS, BackendMismatchError, GrowthTable, ResourceError, growth_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    try:
        field = parse_field(args.field)
    except (UnsupportedFieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    checks = verify_all(field, args.construction)
    print(f"{'id':>2}  {'status':<8}  {'time':>8}  description")
    for c in checks:
        print(f"{c.id:>2}  {c.status:<8}  {c.seconds * 1000:>6.1f}ms  {c.description}")
        if args.dump or not c.verified:
            print(f"    lhs = {c.lhs}")
            print(f"    rhs = {c.rhs}")
            if not c.verified:
                print(f"    lhs - rhs = {c.difference}")
    ok = all(c.verified for c in checks)
    print(f"{sum(c.verified for c in checks)}/{len(checks)} verified over {field}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_growth(args) -> int:
    table = growth_table(
        args.algebra, args.m, args.max_degree, args.backend, args.allow_large,
        min_degree=args.min_degree, timings=args.timings,
    )
    if args.format == "csv":
        text = table.to_csv()
    elif args.format == "json":
        text = table.to_json()
    else:
        text = "".join(f"{n:>3}  {d}\n" for n, d in table.rows)
    _emit(text, args.output)
    return EXIT_OK


def cmd_series(args) -> int:
    try:
        s = parse_series(args.series)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    coeffs = expand(s, args.terms)
    out = {"series": s.to_dict(), "expansion": [str(c) for c in coeffs]}
    try:
        out["pole_multiplicity"] = pole_multiplicity_at_one(s)
    except UndefinedSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out["gkdim"] = gkdim_from_series(s, max(args.terms, 64))
    except NotAHilbertSeriesError as exc:
        out["gkdim"] = None
        out["note"] = f"not a Hilbert series: {exc}"
    if args.format == "json":
        _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.output)
    else:
        lines = [
            f"series:            {s}",
            f"expansion:         {', '.join(out['expansion'])}",
            f"pole order at 1:   {out['pole_multiplicity']}",
            f"GKdim:             {out['gkdim'] if out['gkdim'] is not None else out['note']}",
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_fit(args) -> int:
    text = sys.stdin.read() if args.table == "-" else open(args.table, encoding="utf-8").read()
    try:
        table = GrowthTable.from_csv(text)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.factors is not None:
            factors = tuple(int(x) for x in args.factors.split(",") if x.strip())
            fit = fit_numerator(table, factors, args.guard)
        else:
            twos, threes = (int(x) for x in args.search.split(","))
            fit = search_fit(table, denominator_hypotheses(twos, threes), args.guard)
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = {"table": [{"degree": n, "dim": d} for n, d in table.rows], "guard": args.guard}
    if fit is None:
        out["fit"] = None
    else:
        out["fit"] = fit.to_dict()
        out["pole_multiplicity"] = pole_multiplicity_at_one(fit)
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK if fit is not None else EXIT_FAIL


def cmd_reproduce(args) -> int:
    report = reproduce(args.m, args.max_degree, args.backend, args.allow_large)
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", args.output)
    else:
        _emit(report.to_text(), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkdim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gkdim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the seven matrix identities")
    v.add_argument("--field", default="exact", help="exact (default) or mod:p with p > 3 prime")
    v.add_argument("--construction", choices=["traceless", "projection"], default="traceless")
    v.add_argument("--dump", action="store_true", help="print both sides of each identity")
    v.set_defaults(func=cmd_verify)

    def common(sp, default_backend="exact", formats=("csv", "json", "text"), default_format="csv"):
        sp.add_argument("--backend", choices=["exact", "modular", "modular-then-exact"], default=default_backend)
        sp.add_argument("--format", choices=formats, default=default_format)
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--allow-large", action="store_true", help="acknowledge going past the degree caps")

    g = sub.add_parser("growth", help="graded dimensions of one algebra")
    g.add_argument("--algebra", choices=ALGEBRAS, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--max-degree", type=int, required=True)
    g.add_argument("--min-degree", type=int, default=None)
    g.add_argument("--timings", action="store_true", help="record per-degree seconds in JSON output")
    common(g)
    g.set_defaults(func=cmd_growth)

    s = sub.add_parser("series", help="expand a factored rational series")
    s.add_argument("series", help='e.g. "(1+2t+t^2)/((1-t^2)^3)"')
    s.add_argument("--terms", type=int, default=10, help="expand through this degree")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_series)

    f = sub.add_parser("fit", help="fit h(t)/prod(1-t^d) to a degree,dim CSV")
    f.add_argument("table", help="CSV path or - for stdin")
    grp = f.add_mutually_exclusive_group(required=True)
    grp.add_argument("--factors", help="comma separated denominator exponents, e.g. 2,2,2")
    grp.add_argument("--search", help="TWOS,THREES: search multisets of 2's and 3's")
    f.add_argument("--guard", type=int, default=2)
    f.add_argument("--output", "-o")
    f.set_defaults(func=cmd_fit)

    r = sub.add_parser("reproduce", help="full GKdim pipeline for m generators")
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--max-degree", type=int, default=None)
    common(r, default_backend="modular-then-exact", formats=("text", "json"), default_format="text")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BackendMismatchError as exc:
        print(f"backend mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UnsupportedFieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
