"""Command-line interface.

    crystal-ktheory report --cyclotomic 9 1
    crystal-ktheory census --matrix lattice.json --format json
    crystal-ktheory grid --m 2 3 4 --k 1 2

Exit status: 0 on success, 1 for invalid input, 2 when an internal identity
or cross-check fails.
"""

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from sympy import totient

from . import linalg
from .burnside import BurnsideElement
from .census import census_bruteforce, cross_check
from .cohomology import DEFAULT_ENUMERATION_THRESHOLD, tate_size_limit
from .errors import DimensionOverflow, InternalInconsistency, InvalidInput
from .lattice import CyclicLattice, cyclotomic_lattice, sylow_data, validate
from .report import Options, TateTable, build_report, gamma_cohomology, lambda_ranks, orbifold_cohomology

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def load_lattice(args) -> CyclicLattice:
    if args.cyclotomic is not None:
        m, k = args.cyclotomic
        return cyclotomic_lattice(m, k)
    try:
        with open(args.matrix) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc}") from exc
    return lattice_from_json(data)


def lattice_from_json(data) -> CyclicLattice:
    if not isinstance(data, dict):
        raise UsageError("lattice JSON must be an object")
    if "cyclotomic" in data:
        short = data["cyclotomic"]
        return cyclotomic_lattice(int(short["m"]), int(short["k"]))
    if "m" not in data or "matrix" not in data:
        raise UsageError('lattice JSON needs "m" and "matrix", or "cyclotomic"')
    matrix = data["matrix"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise UsageError('"matrix" must be a list of rows')
    try:
        return validate(int(data["m"]), matrix)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise UsageError(str(exc)) from exc


def options_from(args) -> Options:
    return Options(args.max_degree, args.enumeration_threshold, args.exterior_cap)


# ---------------------------------------------------------------------------
# serialization


def frac(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


def jsonable(x):
    if isinstance(x, Fraction):
        return frac(x)
    if isinstance(x, BurnsideElement):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def input_echo(L: CyclicLattice):
    sd = sylow_data(L)
    return {
        "m": L.m,
        "n": L.n,
        "k": sd.k,
        "k_per_prime": {str(p): k for p, k in zip(sd.primes, sd.k_per_prime)},
        "matrix": [list(r) for r in L.action],
    }


def census_json(census):
    return census.to_json()


def checks_json(checks):
    return [c.to_json() for c in checks]


def report_document(R):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "report",
        "input": input_echo(R.lattice),
        "lambda_ranks": list(R.ranks.ranks),
        "sum_all": R.ranks.sum_all,
        "sum_alt": R.ranks.sum_alt,
        "census": census_json(R.census),
        "s0": R.s0,
        "s1": R.s1,
        "s_closed_form": None if R.s_closed is None else [frac(x) for x in R.s_closed],
        "gamma_cohomology": [g.to_json() for g in R.gamma_cohomology],
        "orbifold_cohomology": [g.to_json() for g in R.orbifold_cohomology],
        "euler_class": {"a": frac(R.euler.a), "element": R.euler.element.to_json()},
        "checks": checks_json(R.checks),
        "provenance": dict(sorted(R.provenance.items())),
        "passed": R.passed,
    }


def _table_text(title, groups):
    lines = [title]
    for g in groups:
        lines.append(f"  H^{g.degree} = {g}")
    return lines


def report_text(R):
    L = R.lattice
    lines = [
        f"m = {L.m}, n = {L.n}, k = {R.k}",
        f"ranks r_l = {list(R.ranks.ranks)}  (sum {R.ranks.sum_all}, alternating {R.ranks.sum_alt})",
        "census (d: classes, maximal):",
    ]
    for d, (c, mx) in R.census.as_pairs().items():
        lines.append(f"  {d}: {c}, {mx}")
    lines.append(f"s0 = {R.s0}, s1 = {R.s1}")
    lines.append(f"euler class = {R.euler.element}  (a = {frac(R.euler.a)})")
    lines += _table_text("cohomology of the group:", R.gamma_cohomology)
    lines += _table_text("cohomology of the orbifold quotient:", R.orbifold_cohomology)
    lines.append("checks:")
    for c in R.checks:
        mark = "ok  " if c.passed else "FAIL"
        lines.append(f"  {mark} {c.name}: {frac(c.left)} vs {frac(c.right)}")
    return "\n".join(lines)


def emit(doc, text, fmt, out):
    if fmt == "json":
        out.write(json.dumps(jsonable(doc), indent=2) + "\n")
    else:
        out.write(text + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_report(args, out):
    L = load_lattice(args)
    R = build_report(L, options_from(args))
    emit(report_document(R), report_text(R), args.format, out)
    for c in R.failed():
        print(f"check failed: {c.name}: {frac(c.left)!r} != {frac(c.right)!r}", file=sys.stderr)
    return EXIT_OK if R.passed else EXIT_MISMATCH


def cmd_census(args, out):
    L = load_lattice(args)
    if L.m == 1:
        census, checks = census_bruteforce(L), []
    else:
        cc = cross_check(L, args.enumeration_threshold)
        census, checks = cc.bruteforce, list(cc.checks)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "census",
        "input": input_echo(L),
        "census": census_json(census),
        "checks": checks_json(checks),
    }
    text = "\n".join([f"{d}: classes {c}, maximal {mx}" for d, (c, mx) in census.as_pairs().items()] or ["(empty)"])
    emit(doc, text, args.format, out)
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"check failed: {c.name}: {c.left!r} != {c.right!r}", file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_cohomology(args, out):
    L = load_lattice(args)
    max_degree = args.max_degree if args.max_degree is not None else 2 * L.n + 2
    ranks = lambda_ranks(L)
    table = TateTable(L, args.exterior_cap)
    gamma = gamma_cohomology(L, max_degree, ranks, table)
    orbi = orbifold_cohomology(L, max_degree, ranks, table)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "cohomology",
        "input": input_echo(L),
        "lambda_ranks": list(ranks.ranks),
        "gamma_cohomology": [g.to_json() for g in gamma],
        "orbifold_cohomology": [g.to_json() for g in orbi],
    }
    text = "\n".join(_table_text("cohomology of the group:", gamma) + _table_text("cohomology of the orbifold quotient:", orbi))
    emit(doc, text, args.format, out)
    return EXIT_OK


def cmd_validate(args, out):
    L = load_lattice(args)
    doc = {"schema_version": SCHEMA_VERSION, "command": "validate", "valid": True, "input": input_echo(L)}
    sd = sylow_data(L)
    emit(doc, f"ok: m = {L.m}, n = {L.n}, k = {sd.k}", args.format, out)
    return EXIT_OK


def grid_rows(ms, ks, options: Options):
    rows = []
    for m in ms:
        for k in ks:
            n = k * int(totient(m))
            if comb(n, n // 2) > tate_size_limit(options.exterior_cap):
                rows.append({"m": m, "k": k, "n": n, "status": "skipped", "reason": "exterior cap exceeded"})
                continue
            try:
                R = build_report(cyclotomic_lattice(m, k), options)
            except DimensionOverflow:
                rows.append({"m": m, "k": k, "n": n, "status": "skipped", "reason": "exterior cap exceeded"})
                continue
            except InternalInconsistency as exc:
                rows.append({"m": m, "k": k, "n": n, "status": "fail", "error": str(exc), "checks": {}})
                continue
            rows.append(
                {
                    "m": m,
                    "k": k,
                    "n": n,
                    "status": "pass" if R.passed else "fail",
                    "s0": R.s0,
                    "s1": R.s1,
                    "checks": {c.name: c.passed for c in R.checks},
                }
            )
    return rows


def cmd_grid(args, out):
    rows = grid_rows(args.m, args.k, options_from(args))
    doc = {"schema_version": SCHEMA_VERSION, "command": "grid", "rows": rows}
    lines = [f"{'m':>3} {'k':>2} {'n':>3} {'s0':>8} {'s1':>8}  status"]
    for r in rows:
        s0 = r.get("s0", "-")
        s1 = r.get("s1", "-")
        extra = ""
        if r["status"] == "fail":
            bad = [name for name, ok in r.get("checks", {}).items() if not ok]
            extra = " " + (", ".join(bad) if bad else r.get("error", ""))
        lines.append(f"{r['m']:>3} {r['k']:>2} {r['n']:>3} {s0:>8} {s1:>8}  {r['status']}{extra}")
    emit(doc, "\n".join(lines), args.format, out)
    failing = [r for r in rows if r["status"] == "fail"]
    for r in failing:
        print(f"instance m={r['m']} k={r['k']} failed", file=sys.stderr)
    return EXIT_MISMATCH if failing else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(p, needs_lattice=True):
    if needs_lattice:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--cyclotomic", nargs=2, type=int, metavar=("M", "K"), help="Z[zeta_M]^K")
        src.add_argument("--matrix", metavar="FILE", help='JSON {"m": int, "matrix": [[...]]}')
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-degree", type=int, default=None, help="top cohomological degree (default 2n+2)")
    p.add_argument("--enumeration-threshold", type=int, default=DEFAULT_ENUMERATION_THRESHOLD)
    p.add_argument("--exterior-cap", type=int, default=linalg.DEFAULT_EXTERIOR_CAP)


def build_parser():
    parser = argparse.ArgumentParser(prog="crystal-ktheory", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, helptext in (
        ("report", cmd_report, "full pipeline with all identity checks"),
        ("census", cmd_census, "maximal finite subgroup census, both routes"),
        ("cohomology", cmd_cohomology, "cohomology tables of the group and the orbifold quotient"),
        ("validate", cmd_validate, "check the lattice datum only"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        p.set_defaults(func=func)
    g = sub.add_parser("grid", help="run the report over cyclotomic lattices")
    g.add_argument("--m", nargs="+", type=int, default=[2, 3, 4, 5, 6, 7, 8, 9, 12])
    g.add_argument("--k", nargs="+", type=int, default=[1, 2])
    _add_common(g, needs_lattice=False)
    g.set_defaults(func=cmd_grid)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InvalidInput, UsageError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main_entry():
    sys.exit(main())
