"""Command-line interface.

Subcommands:
  check      cohomology numbers and membership verdicts for a JSON input
  minimal    full minimality certificate with the structural bounds
  critical   extract a critical scheme from a point set
  witness    classify the curve explaining a dependence
  construct  generate a structured point-set family
  verify     run a verification suite and persist its report

Inputs are JSON files: either {"n": ..., "points": [[...], ...]} for a
point set or {"n": ..., "components": [...]} for a scheme.  Reports are
written as JSON or CSV (--out file.json | file.csv, or a bare "json"/
"csv" to print to stdout); --figures renders PNG figures next to a file
report.  Exit codes: 0 pass, 1 counterexample, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .cohomology import SCHEMA_VERSION, cohomology
from .constructions import (
    COMPLETE_INTERSECTION,
    FREE_POINTS,
    ai0_witness,
    elliptic_quartic_points,
    plane_cubic_points,
    random_points,
    reducible_rnc_points,
    rnc_points,
)
from .critical import NotPositiveH1, find_critical
from .linalg import DEFAULT_PRIME, is_prime
from .membership import check_member_bounds, is_minimally_terracini
from .projective import Point
from .schemes import (
    ZeroDimScheme,
    double_scheme,
    points_from_json,
    points_to_json,
    scheme_from_json,
    scheme_to_json,
)
from .suites import SUITES, SuiteConfig, report_to_csv_rows, run_suite
from .witness import ClassificationIncomplete, classify


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _parse_primes(args) -> tuple[int, ...]:
    if getattr(args, "primes", None):
        primes = tuple(int(p) for p in args.primes.split(","))
    elif getattr(args, "prime", None):
        primes = (int(args.prime),)
    else:
        primes = (DEFAULT_PRIME,)
    for p in primes:
        if not is_prime(p):
            raise CliError(f"{p} is not prime")
    return primes


def _load_input(path: str, prime: int):
    """Returns ("points", list[Point]) or ("scheme", ZeroDimScheme)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        )
    try:
        if "points" in data:
            return "points", points_from_json(data, prime)
        if "components" in data:
            return "scheme", scheme_from_json(data, prime)
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"{path}: invalid input: {exc}")
    raise CliError(f"{path}: expected a 'points' or 'components' object")


def _flatten(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def _emit(payload: dict, rows: list[dict] | None, args) -> list[str]:
    """Write the payload as JSON/CSV per --out; returns written paths."""
    out = getattr(args, "out", None)
    written: list[str] = []
    if out is None:
        return written
    if out == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        return written
    if out == "csv":
        print(_csv_text(rows or [payload]))
        return written
    path = Path(out)
    if path.suffix == ".csv":
        path.write_text(_csv_text(rows or [payload]))
    else:
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    written.append(str(path))
    return written


def _csv_text(rows: list[dict]) -> str:
    flat = [{k: _flatten(v) for k, v in row.items()} for row in rows]
    fields: list[str] = []
    for row in flat:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def _figure_base(args) -> Path | None:
    out = getattr(args, "out", None)
    if not getattr(args, "figures", False):
        return None
    if out in (None, "json", "csv"):
        raise CliError("--figures needs --out to point at a file")
    return Path(out).with_suffix("")


# --- subcommands ------------------------------------------------------------


def _cmd_check(args) -> int:
    primes = _parse_primes(args)
    kind, obj = _load_input(args.input, primes[0])
    d = args.d
    payload: dict = {"schema_version": SCHEMA_VERSION, "input": args.input, "d": d}
    if kind == "points":
        points = obj
        cert = is_minimally_terracini(points, d)
        payload["points"] = points_to_json(points)
        payload["certificate"] = cert.to_json()
        print(
            f"x={cert.x} points in P^{cert.n}, d={d}: h0={cert.h0} h1={cert.h1} "
            f"span={cert.span}"
        )
        verdict = (
            "minimally Terracini"
            if cert.minimal
            else ("Terracini, not minimal" if cert.terracini else "not Terracini")
        )
        print(f"verdict: {verdict}")
        if cert.minimal:
            bounds = check_member_bounds(cert)
            payload["bounds"] = [
                {"name": b.name, "passed": b.passed, "detail": b.detail}
                for b in bounds
            ]
            for b in bounds:
                print(f"bound {b.name}: {'ok' if b.passed else 'FAIL'} ({b.detail})")
        z = double_scheme(points)
    else:
        z = obj
        rep = cohomology(z, d)
        payload["scheme"] = scheme_to_json(z)
        payload["cohomology"] = rep.to_json()
        print(
            f"scheme of degree {z.degree} in P^{z.n}, d={d}: "
            f"h0={rep.h0} h1={rep.h1} (rank {rep.rank})"
        )
    if args.critical and kind == "points":
        try:
            crit = find_critical(obj, d)
            payload["critical"] = crit.to_json()
            print(
                f"critical scheme: degree {crit.scheme.degree}, "
                f"h1 = {crit.h1}, support {len(crit.scheme.support)}"
            )
        except NotPositiveH1:
            print("critical scheme: none (conditions are independent)")
    if args.witness:
        target = z if kind == "scheme" else None
        if target is None:
            try:
                target = find_critical(obj, d).scheme
            except NotPositiveH1:
                target = None
        if target is None:
            print("witness: nothing to explain (h1 = 0)")
        else:
            try:
                w = classify(target, d, budget=args.budget)
                payload["witness"] = w.to_json()
                print(
                    f"witness: {w.kind}, achieved {w.achieved} "
                    f"(threshold {w.threshold})"
                )
            except ClassificationIncomplete as exc:
                payload["witness_failure"] = exc.payload()
                print(f"witness: CLASSIFICATION INCOMPLETE ({exc})")
                _emit(payload, None, args)
                return 1
            except ValueError as exc:
                payload["witness_not_applicable"] = str(exc)
                print(f"witness: not applicable ({exc})")
    written = _emit(payload, None, args)
    base = _figure_base(args)
    if base is not None:
        from .figures import render_cohomology_profile

        reports = [cohomology(z, t) for t in range(1, d + 3)]
        fig_path = render_cohomology_profile(
            reports, d, str(base) + "_profile.png", f"{args.input} (d={d})"
        )
        print(f"figure written to {fig_path}")
    for path in written:
        print(f"report written to {path}")
    return 0


def _cmd_minimal(args) -> int:
    primes = _parse_primes(args)
    kind, obj = _load_input(args.input, primes[0])
    if kind != "points":
        raise CliError("minimality applies to point sets")
    cert = is_minimally_terracini(obj, args.d)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "certificate": cert.to_json(),
    }
    if cert.minimal:
        bounds = check_member_bounds(cert)
        payload["bounds"] = [
            {"name": b.name, "passed": b.passed, "detail": b.detail} for b in bounds
        ]
    print(f"minimal: {cert.minimal}")
    if cert.violating_subset is not None:
        print(f"violating subset (indices): {list(cert.violating_subset)}")
    _emit(payload, None, args)
    return 0


def _cmd_critical(args) -> int:
    primes = _parse_primes(args)
    kind, obj = _load_input(args.input, primes[0])
    if kind != "points":
        raise CliError("critical extraction starts from a point set")
    try:
        crit = find_critical(obj, args.d)
    except NotPositiveH1:
        print("no critical scheme: the double points impose independent conditions")
        return 0
    payload = {"schema_version": SCHEMA_VERSION, **crit.to_json()}
    print(
        f"critical scheme: degree {crit.scheme.degree}, h1 = {crit.h1}, "
        f"support {len(crit.scheme.support)} of {len(obj)} points"
    )
    _emit(payload, None, args)
    return 0


def _cmd_witness(args) -> int:
    primes = _parse_primes(args)
    kind, obj = _load_input(args.input, primes[0])
    if kind == "points":
        try:
            z = find_critical(obj, args.d).scheme
        except NotPositiveH1:
            print("nothing to explain: h1 = 0")
            return 0
    else:
        z = obj
    try:
        w = classify(z, args.d, budget=args.budget)
    except ClassificationIncomplete as exc:
        payload = {"schema_version": SCHEMA_VERSION, "failure": exc.payload()}
        _emit(payload, None, args)
        print(f"CLASSIFICATION INCOMPLETE: {exc}")
        return 1
    except ValueError as exc:
        print(f"witness: not applicable ({exc})")
        return 0
    payload = {"schema_version": SCHEMA_VERSION, "witness": w.to_json()}
    print(f"witness: {w.kind}, achieved {w.achieved} (threshold {w.threshold})")
    _emit(payload, None, args)
    return 0


def _cmd_construct(args) -> int:
    primes = _parse_primes(args)
    prime = primes[0]
    family = args.family
    spec = None
    if family == "rnc":
        if args.n is None or args.x is None:
            raise CliError("rnc needs --n and --x")
        spec, points = rnc_points(args.n, args.x, args.seed, prime)
    elif family == "reducible-rnc":
        if not args.chain or not args.allocation:
            raise CliError("reducible-rnc needs --chain and --allocation")
        chain = tuple(int(c) for c in args.chain.split(","))
        alloc = tuple(int(c) for c in args.allocation.split(","))
        spec, points, _flags = reducible_rnc_points(chain, alloc, args.seed, prime)
    elif family == "elliptic":
        if args.d is None and args.count is None:
            raise CliError("elliptic needs --d (even) or --count")
        spec, points = elliptic_quartic_points(
            args.d if args.d is not None else 0, args.seed, prime, count=args.count
        )
    elif family == "plane-cubic":
        if args.d is None:
            raise CliError("plane-cubic needs --d")
        mode = COMPLETE_INTERSECTION if args.d % 2 == 0 else FREE_POINTS
        spec, points = plane_cubic_points(
            args.d, mode, args.seed, prime, count=args.count
        )
    elif family == "ai0":
        if None in (args.n, args.d, args.x):
            raise CliError("ai0 needs --n, --d and --x")
        points = ai0_witness(args.n, args.d, args.x, args.seed, prime)
    elif family == "random":
        if args.n is None or args.x is None:
            raise CliError("random needs --n and --x")
        points = random_points(args.n, args.x, args.seed, prime)
    else:
        raise CliError(f"unknown family {family!r}")
    payload = {
        "schema_version": SCHEMA_VERSION,
        "family": family,
        "prime": prime,
        "seed": args.seed,
        **points_to_json(points),
    }
    if spec is not None:
        payload["curve"] = spec.to_json()
    print(f"{len(points)} points in P^{points[0].n} (family {family}, seed {args.seed})")
    written = _emit(payload, None, args)
    for path in written:
        print(f"written to {path}")
    if not written and getattr(args, "out", None) is None:
        print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    primes = _parse_primes(args)
    d_values = None
    if args.d_values:
        d_values = tuple(int(v) for v in args.d_values.split(","))
    elif args.d is not None:
        d_values = (args.d,)
    cfg = SuiteConfig(
        suite=args.suite,
        seed=args.seed,
        primes=primes,
        trials=args.trials,
        budget=args.budget,
        d_values=d_values,
    )
    report = run_suite(cfg)
    payload = report.to_json()
    rows = report_to_csv_rows(report)
    for cell in report.cells:
        label = json.dumps(cell.cell, sort_keys=True)
        print(f"{cell.status:20s} {label}")
    print(
        f"suite {report.suite}: {'PASS' if report.passed else 'COUNTEREXAMPLE'} "
        f"({len(report.cells)} cells, {report.elapsed_seconds:.1f}s)"
    )
    written = _emit(payload, rows, args)
    base = _figure_base(args)
    if base is not None:
        from .figures import render_suite_grid

        fig_path = render_suite_grid(report, str(base) + "_grid.png")
        print(f"figure written to {fig_path}")
    for path in written:
        print(f"report written to {path}")
    return 0 if report.passed else 1


# --- parser -----------------------------------------------------------------


def _add_common(sub, d_required=True):
    sub.add_argument("--d", type=int, required=d_required, help="twist degree")
    sub.add_argument("--prime", type=int, help="field prime (default 2^31 - 1)")
    sub.add_argument("--primes", help="comma-separated primes for cross-checks")
    sub.add_argument("--seed", type=int, default=0, help="master seed")
    sub.add_argument(
        "--out", help="report destination: file.json, file.csv, or bare json/csv"
    )
    sub.add_argument(
        "--budget", type=int, default=20000, help="conic enumeration budget"
    )
    sub.add_argument(
        "--figures", action="store_true", help="render PNG figures next to --out"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terracini",
        description=(
            "Exact toolkit for Terracini and minimally-Terracini loci of "
            "finite point sets in projective space."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="cohomology and membership report")
    p.add_argument("input", help="JSON file with points or a scheme")
    _add_common(p)
    p.add_argument("--critical", action="store_true", help="include a critical scheme")
    p.add_argument("--witness", action="store_true", help="include a witness curve")
    p.set_defaults(func=_cmd_check)

    p = subs.add_parser("minimal", help="minimality certificate")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=_cmd_minimal)

    p = subs.add_parser("critical", help="extract a critical scheme")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=_cmd_critical)

    p = subs.add_parser("witness", help="classify the dependence witness")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=_cmd_witness)

    p = subs.add_parser("construct", help="generate a point-set family")
    p.add_argument(
        "family",
        choices=["rnc", "reducible-rnc", "elliptic", "plane-cubic", "ai0", "random"],
    )
    _add_common(p, d_required=False)
    p.add_argument("--n", type=int, help="ambient projective dimension")
    p.add_argument("--x", type=int, help="number of points")
    p.add_argument("--count", type=int, help="free sample size override")
    p.add_argument("--chain", help="segment degrees, e.g. 1,2")
    p.add_argument("--allocation", help="points per segment, e.g. 4,8")
    p.set_defaults(func=_cmd_construct)

    p = subs.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite", required=True, choices=sorted(SUITES), help="suite id"
    )
    _add_common(p, d_required=False)
    p.add_argument("--trials", type=int, help="trials per emptiness cell")
    p.add_argument("--d-values", help="comma-separated twist grid override")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ClassificationIncomplete as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
