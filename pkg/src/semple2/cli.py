"""Command-line front end.

Subcommands: `table` emits the invariant table, `contact` evaluates the
triple-contact formula, `count` evaluates mixed condition profiles,
`chow-eval` normalizes ring expressions, and `verify` runs the self-test.
Data goes to stdout, diagnostics to stderr.  All integers are emitted as
decimal strings in JSON output.  Exit codes: 0 success, 2 usage error,
3 unsupported profile, 4 verification or cache failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List

from .chow import (
    ChowParseError,
    I_BASIS_ORDER,
    I_BASIS_SYMBOL,
    LABELS,
    Z_BASIS_SYMBOL,
    format_coords,
    integrate,
    parse_class_expr,
    to_i_basis,
)
from .contact import (
    ConditionProfile,
    CurveInvariants,
    UnsupportedProfileError,
    contact_formula,
    contact_number,
    mixed_count,
    plucker_class,
)
from .recursion import INVARIANT_LABELS, CacheError, InvariantTable, compute_up_to
from .verify import run_selftest

CACHE_ENV = "SEMPLE2_CACHE"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_VERIFY = 4


def _default_cache(value: str | None) -> str | None:
    return value if value is not None else os.environ.get(CACHE_ENV)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _diag(text: str) -> None:
    sys.stderr.write(text + "\n")


def _table_json(table: InvariantTable, dmax: int) -> str:
    data = {
        "max_degree": dmax,
        "labels": list(INVARIANT_LABELS),
        "values": {
            label: [str(table.get(d, label)) for d in range(1, dmax + 1)]
            for label in INVARIANT_LABELS
        },
    }
    return json.dumps(data, indent=2)


def _table_csv(table: InvariantTable, dmax: int) -> str:
    lines = ["invariant," + ",".join(str(d) for d in range(1, dmax + 1))]
    for label in INVARIANT_LABELS:
        lines.append(label + "," + ",".join(
            str(table.get(d, label)) for d in range(1, dmax + 1)))
    return "\n".join(lines)


def _table_pretty(table: InvariantTable, dmax: int) -> str:
    rows = [[label] + [str(table.get(d, label)) for d in range(1, dmax + 1)]
            for label in INVARIANT_LABELS]
    header = ["invariant"] + [f"d={d}" for d in range(1, dmax + 1)]
    widths = [max(len(header[i]), *(len(r[i]) for r in rows))
              for i in range(len(header))]
    fmt_row = lambda r: "  ".join(
        r[i].ljust(widths[i]) if i == 0 else r[i].rjust(widths[i])
        for i in range(len(r)))
    return "\n".join([fmt_row(header)] + [fmt_row(r) for r in rows])


def _cmd_table(args) -> int:
    table = compute_up_to(args.max_degree, cache_path=_default_cache(args.cache))
    if args.format == "json":
        _emit(_table_json(table, args.max_degree))
    elif args.format == "csv":
        _emit(_table_csv(table, args.max_degree))
    else:
        _emit(_table_pretty(table, args.max_degree))
    return EXIT_OK


def _curve_from_args(args) -> CurveInvariants | None:
    if args.plucker is not None:
        c, nodes, cusps = _parse_triple(args.plucker)
        return plucker_class(c, nodes, cusps)
    if args.c is None:
        if args.class_ is not None or args.nodes is not None or args.cusps is not None:
            raise ValueError("curve options need --c")
        return None
    if args.class_ is not None:
        if args.nodes is not None or args.cusps is not None:
            raise ValueError("give either --class or --nodes/--cusps, not both")
        return CurveInvariants(args.c, args.class_, args.kappa or 0)
    if args.kappa is not None:
        raise ValueError("--kappa needs --class; with the singularity form use --cusps")
    return plucker_class(args.c, args.nodes or 0, args.cusps or 0)


def _cmd_contact(args) -> int:
    d = args.degree
    table = compute_up_to(d, cache_path=_default_cache(args.cache))
    curve = _curve_from_args(args)
    formula = contact_formula(d, table)
    a, b, k = (table.get(d, "hd2z"), table.get(d, "h2z"), table.get(d, "h2hd"))
    if args.format == "json":
        data = {
            "degree": d,
            "formula": formula,
            "coefficients": {"c": str(a), "class": str(b), "kappa": str(k)},
        }
        if curve is not None:
            data["curve"] = {"c": str(curve.c), "class": str(curve.cdual),
                             "kappa": str(curve.kappa)}
            data["count"] = str(contact_number(d, curve, table))
        _emit(json.dumps(data, indent=2))
    else:
        _emit(f"N_{d}(C) = {formula}")
        if curve is not None:
            _emit(f"count = {contact_number(d, curve, table)}")
    return EXIT_OK


def _parse_triple(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated integers, got {text!r}")
    try:
        return tuple(int(p.strip()) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad curve triple {text!r}") from exc


def _cmd_count(args) -> int:
    d = args.degree
    tangents = tuple(CurveInvariants(*_parse_triple(s)) for s in args.tangent or [])
    osculants = tuple(CurveInvariants(*_parse_triple(s)) for s in args.osculate or [])
    table = compute_up_to(d, cache_path=_default_cache(args.cache))
    profile = ConditionProfile(d, args.points, tangents, osculants)
    value = mixed_count(profile, table)
    if args.format == "json":
        data = {
            "degree": d,
            "points": args.points,
            "tangent": [[c.c, c.cdual, c.kappa] for c in tangents],
            "osculate": [[c.c, c.cdual, c.kappa] for c in osculants],
            "count": str(value),
        }
        _emit(json.dumps(data, indent=2))
    else:
        _emit(str(value))
    return EXIT_OK


def _cmd_chow_eval(args) -> int:
    cls = parse_class_expr(args.expr)
    if args.basis == "z":
        coords = {label: cls.coordinate(label) for label in LABELS}
        symbolic = format_coords([coords[l] for l in LABELS], LABELS, Z_BASIS_SYMBOL)
        order = LABELS
    else:
        icoords = to_i_basis(cls)
        coords = dict(zip(I_BASIS_ORDER, icoords))
        symbolic = format_coords(icoords, I_BASIS_ORDER, I_BASIS_SYMBOL)
        order = I_BASIS_ORDER
    if args.format == "json":
        data = {
            "expression": args.expr,
            "basis": args.basis,
            "coords": {label: str(coords[label]) for label in order if coords[label]},
            "normal_form": symbolic,
        }
        if args.integrate:
            data["integral"] = str(integrate(cls))
        _emit(json.dumps(data, indent=2))
    else:
        if args.integrate:
            _emit(str(integrate(cls)))
        else:
            _emit(symbolic)
    return EXIT_OK


def _cmd_verify(args) -> int:
    reports = run_selftest(args.max_degree, cache_path=args.cache)
    for r in reports:
        _diag(("PASS" if r.passed else "FAIL") + f" {r.name} [{r.degrees}]")
    _emit(json.dumps([r.to_dict() for r in reports], indent=2))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semple2",
        description="Second-order invariants of rational plane curves and "
                    "triple-contact counts, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="emit the invariant table")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    p.add_argument("--cache", default=None,
                   help=f"cache file (default from ${CACHE_ENV})")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("contact", help="triple-contact formula and counts")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--c", type=int, default=None, help="degree of the fixed curve")
    p.add_argument("--class", dest="class_", type=int, default=None,
                   help="class (dual degree) of the fixed curve")
    p.add_argument("--kappa", type=int, default=None, help="cusp count")
    p.add_argument("--nodes", type=int, default=None,
                   help="node count (class computed from singularities)")
    p.add_argument("--cusps", type=int, default=None, help="cusp count")
    p.add_argument("--plucker", default=None, metavar="C,NODES,CUSPS",
                   help="curve as degree,nodes,cusps")
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_contact)

    p = sub.add_parser("count", help="count curves meeting a condition profile")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--tangent", action="append", metavar="C,CLASS,KAPPA",
                   help="tangency condition curve (repeatable)")
    p.add_argument("--osculate", action="append", metavar="C,CLASS,KAPPA",
                   help="triple-contact condition curve (repeatable)")
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("chow-eval", help="normalize a ring expression")
    p.add_argument("expr", help="expression in h, hd, i, z")
    p.add_argument("--basis", choices=("z", "i"), default="z")
    p.add_argument("--integrate", action="store_true")
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.set_defaults(func=_cmd_chow_eval)

    p = sub.add_parser("verify", help="run the self-test oracles")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--cache", default=None,
                   help="also validate this cache file")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: List[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedProfileError as exc:
        _diag(f"error: {exc}")
        return EXIT_UNSUPPORTED
    except CacheError as exc:
        _diag(f"error: {exc}")
        return EXIT_VERIFY
    except (ChowParseError, ValueError, KeyError) as exc:
        _diag(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
