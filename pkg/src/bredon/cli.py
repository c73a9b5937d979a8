"""Command-line interface.

Subcommands: ``weight0`` (one group), ``grid`` (a table of groups),
``derive`` (replay the weight-1 / sign-weight inductions, optionally with
axiom traces), ``check`` (run comparison suites), ``export`` (write a grid
to a file).  The exit code is 0 only when every requested check passes.
"""

from __future__ import annotations

import argparse
import sys

from . import sigmacx
from .formal import derive_weight1, derive_weight_sigma, get_profile
from .tables import GridSpec, export_grid, render_grid
from .tables.checks import SUITES, check


def _coeff(value: str) -> int:
    if value in ("Z", "0"):
        return 0
    if value in ("2", "Z/2"):
        return 2
    raise argparse.ArgumentTypeError("coefficients must be Z or 2")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bredon",
        description="exact calculator for the two-graded equivariant cohomology tables")
    sub = parser.add_subparsers(dest="command", required=True)

    w0 = sub.add_parser("weight0", help="one weight-0 group from the cycle complexes")
    w0.add_argument("--a", type=int, required=True)
    w0.add_argument("--p", type=int, required=True)
    w0.add_argument("--coeff", type=_coeff, default=0)

    grid = sub.add_parser("grid", help="render a grid of groups")
    grid.add_argument("--weight", choices=["0", "1", "sigma"], default="0")
    grid.add_argument("--p-range", type=int, default=3)
    grid.add_argument("--a-min", type=int, default=None)
    grid.add_argument("--a-max", type=int, default=None)
    grid.add_argument("--coeff", type=_coeff, default=0)
    grid.add_argument("--profile", default="general",
                      choices=["qclosed", "euclidean", "freal", "general"])
    grid.add_argument("--source", default=None, choices=["computed", "fixture", "derived"])
    grid.add_argument("--format", dest="fmt", default="text",
                      choices=["text", "json", "csv"])

    derive = sub.add_parser("derive", help="replay the table derivations")
    derive.add_argument("--weight", choices=["1", "sigma"], required=True)
    derive.add_argument("--profile", required=True,
                        choices=["qclosed", "euclidean", "freal", "general"])
    derive.add_argument("--n-max", type=int, default=8)
    derive.add_argument("--coeff", type=_coeff, default=0)
    derive.add_argument("--trace", action="store_true",
                        help="print the axiom trail of every entry")

    chk = sub.add_parser("check", help="run comparison suites")
    chk.add_argument("suites", nargs="+",
                     help=f"suite names ({', '.join(sorted(SUITES))}) or 'all'")
    chk.add_argument("--p-max", type=int, default=8)
    chk.add_argument("--n-max", type=int, default=16)
    chk.add_argument("--verbose", action="store_true")

    exp = sub.add_parser("export", help="write a grid to a file")
    exp.add_argument("--weight", choices=["0", "1", "sigma"], default="0")
    exp.add_argument("--p-range", type=int, default=3)
    exp.add_argument("--a-min", type=int, default=None)
    exp.add_argument("--a-max", type=int, default=None)
    exp.add_argument("--coeff", type=_coeff, default=0)
    exp.add_argument("--profile", default="general",
                     choices=["qclosed", "euclidean", "freal", "general"])
    exp.add_argument("--source", default=None, choices=["computed", "fixture", "derived"])
    exp.add_argument("--format", dest="fmt", default="json", choices=["text", "json", "csv"])
    exp.add_argument("--out", default=None, help="output path (default: stdout)")
    return parser


def _default_source(weight: str, explicit) -> str:
    if explicit:
        return explicit
    return "computed" if weight == "0" else "fixture"


def _spec_from_args(args) -> GridSpec:
    return GridSpec(weight=args.weight, coeff=args.coeff, p_range=args.p_range,
                    a_min=args.a_min, a_max=args.a_max, profile=args.profile,
                    source=_default_source(args.weight, args.source))


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "weight0":
        group = sigmacx.weight0(args.a, args.p, args.coeff)
        print(group.render())
        return 0

    if args.command == "grid":
        sys.stdout.write(render_grid(_spec_from_args(args), args.fmt))
        return 0

    if args.command == "export":
        text = export_grid(_spec_from_args(args), args.fmt, args.out)
        if args.out is None:
            sys.stdout.write(text)
        else:
            print(f"wrote {args.out}")
        return 0

    if args.command == "derive":
        profile = get_profile(args.profile)
        deriver = derive_weight1 if args.weight == "1" else derive_weight_sigma
        tables = deriver(profile, args.n_max, coeff=args.coeff)
        for cone in ("positive", "negative"):
            table = tables[cone]
            print(f"# weight {args.weight}, {cone} cone, profile {profile.name}, "
                  f"coeff {'Z' if args.coeff == 0 else 'Z/2'}")
            for p in table.derived_shifts():
                if (p > 0 and cone == "negative") or (p < 0 and cone == "positive"):
                    continue
                entries = table.columns.get(p, {})
                for a in sorted(entries):
                    e = entries[a]
                    line = f"  (a={a:+d}, p={p:+d})  {e.group.render() if e.group else '?'}"
                    if args.trace:
                        line += "   [" + ", ".join(e.trail) + "]"
                    print(line)
            for note in table.notes:
                print(f"  note: {note}")
        return 0

    if args.command == "check":
        reports = []
        for suite in args.suites:
            reports.extend(check(suite, p_max=args.p_max, n_max=args.n_max))
        failed = False
        for report in reports:
            print(report.summary())
            shown = report.failures if not args.verbose else report.cells
            for cell in shown[:20]:
                mark = "ok " if cell.ok else "FAIL"
                print(f"  {mark} {cell.key}: got {cell.got}, expected {cell.expected}"
                      + (f"  [{cell.citation}]" if cell.citation else ""))
            failed |= not report.passed
        return 1 if failed else 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
