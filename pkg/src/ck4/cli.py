"""Command line front end.

Subcommands:
  analyze   one algebra (built-in family or JSON file) -> classification report
  sweep     a rational parameter grid -> markdown or JSON table
  selftest  the named identity suites

Exit status: 0 ok, 2 parse error, 3 validation (Jacobi) error,
4 numerical-confidence warning (float backend rank decisions near tolerance).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import identities, liealg, report
from .liealg import ParseError, ValidationError
from .scalars import FLOAT, RATIONAL, ScalarError, format_scalar

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CONFIDENCE = 4

_PARAM_FLAGS = ("a", "b", "alpha", "c")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ck4",
        description=(
            "Curvature decomposition and conformal Killing 2-form dimensions "
            "for 4-dimensional metric Lie algebras"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="classify one algebra")
    analyze.add_argument("path", nargs="?", help="JSON file with a user algebra")
    analyze.add_argument("--family", choices=sorted(liealg.FAMILIES))
    for flag in _PARAM_FLAGS:
        analyze.add_argument(f"--{flag}", help="family parameter (rational string)")
    analyze.add_argument("--format", choices=("md", "json"), default="md")
    analyze.add_argument("--backend", choices=(RATIONAL, FLOAT))
    analyze.add_argument("--tol", type=float, help="float backend tolerance")

    sweep = sub.add_parser("sweep", help="classify a parameter grid")
    sweep.add_argument("--family", required=True, choices=sorted(liealg.FAMILIES))
    for flag in _PARAM_FLAGS:
        sweep.add_argument(f"--{flag}", help="comma-separated parameter values")
    sweep.add_argument("--format", choices=("md", "json"), default="md")
    sweep.add_argument("--backend", choices=(RATIONAL, FLOAT))
    sweep.add_argument("--tol", type=float)

    selftest = sub.add_parser("selftest", help="run the identity suites")
    selftest.add_argument("--trials", type=int, default=60)
    selftest.add_argument("--seed", type=int, default=20240)
    selftest.add_argument("--backend", choices=(RATIONAL, FLOAT), default=RATIONAL)
    return parser


def _collect_params(args):
    return {flag: getattr(args, flag) for flag in _PARAM_FLAGS if getattr(args, flag) is not None}


def _load_algebra(args):
    if args.path and args.family:
        raise ParseError("give either a JSON path or --family, not both")
    if args.path:
        try:
            with open(args.path, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
        except OSError as exc:
            raise ParseError(f"cannot read {args.path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {args.path}: {exc}") from exc
        mla = liealg.from_json_dict(payload)
    elif args.family:
        mla = liealg.make_family(args.family, backend=args.backend, **_collect_params(args))
    else:
        raise ParseError("give a JSON path or --family")
    if args.backend and mla.backend != args.backend:
        mla = _rebackend(mla, args.backend, args.tol)
    elif args.tol is not None:
        mla = _rebackend(mla, FLOAT, args.tol)
    return mla


def _rebackend(mla, backend, tol):
    brackets = {}
    for i in range(4):
        for j in range(i + 1, 4):
            vec = mla.c[i][j]
            if any(x != 0 for x in vec):
                brackets[(i + 1, j + 1)] = [float(x) if backend == FLOAT else x for x in vec]
    params = tuple(
        (name, float(v) if backend == FLOAT else v) for name, v in mla.params
    )
    eps = None
    if backend == FLOAT and tol is not None:
        eps = tol
    return liealg.build_algebra(mla.label, brackets, params=params, backend=backend, eps=eps)


def _cmd_analyze(args):
    mla = _load_algebra(args)
    violations = liealg.validate(mla)
    if violations:
        raise ValidationError(violations)
    rep = report.build_report(mla)
    if args.format == "json":
        sys.stdout.write(report.report_to_json(rep))
    else:
        sys.stdout.write(report.report_to_markdown(rep))
    if rep["warnings"]:
        return EXIT_CONFIDENCE
    return EXIT_OK


def _parse_value_list(text, backend):
    if text is None or text.strip() == "":
        return []
    return [v.strip() for v in text.split(",")]


def _cmd_sweep(args):
    _, wanted = liealg.FAMILIES[args.family]
    backend = args.backend or RATIONAL
    grids = []
    for flag in wanted:
        values = _parse_value_list(getattr(args, flag), backend)
        grids.append([(flag, v) for v in values])
    for flag in _PARAM_FLAGS:
        if flag not in wanted and getattr(args, flag) is not None:
            raise ParseError(f"family {args.family!r} does not take --{flag}")
    rows = []
    combos = [()] if not grids else list(itertools.product(*grids))
    if any(not g for g in grids):
        combos = []
    for combo in combos:
        params = dict(combo)
        row = {"family": args.family, "parameters": dict(params)}
        try:
            mla = liealg.make_family(args.family, backend=args.backend, **params)
            if args.backend == FLOAT or args.tol is not None:
                mla = _rebackend(mla, FLOAT, args.tol)
            violations = liealg.validate(mla)
            if violations:
                raise ValidationError(violations)
            rep = report.build_report(mla)
            row.update(
                {
                    "scalar_curvature": rep["scalar_curvature"],
                    "is_einstein": rep["flags"]["is_einstein"],
                    "weyl_vanishing_sides": rep["ck_dims"]["weyl_vanishing_sides"],
                    "ck_plus": rep["ck_dims"]["plus"],
                    "ck_minus": rep["ck_dims"]["minus"],
                    "case": rep["case"],
                    "warnings": rep["warnings"],
                }
            )
        except (ParseError, ScalarError, ValidationError) as exc:
            row["error"] = str(exc)
        rows.append(row)
    ok_rows = [r for r in rows if "error" not in r]
    cross_check = all(
        _dim_weyl_consistent(r) for r in ok_rows
    )
    summary = {
        "rows": len(rows),
        "errors": len(rows) - len(ok_rows),
        "dim2_implies_weyl_zero": cross_check,
    }
    if args.format == "json":
        sys.stdout.write(json.dumps({"rows": rows, "summary": summary}, indent=2) + "\n")
    else:
        sys.stdout.write(_sweep_markdown(rows, summary))
    return EXIT_OK


def _dim_weyl_consistent(row):
    for side, dim in (("plus", row["ck_plus"]), ("minus", row["ck_minus"])):
        if dim >= 2 and side not in row["weyl_vanishing_sides"]:
            return False
    return True


def _sweep_markdown(rows, summary):
    header = "| parameters | S | einstein | weyl zero | ck(+,-) | case |"
    sep = "|---|---|---|---|---|---|"
    lines = [header, sep]
    for row in rows:
        params = ", ".join(f"{k}={v}" for k, v in row["parameters"].items()) or "-"
        if "error" in row:
            lines.append(f"| {params} | error: {row['error']} | | | | |")
            continue
        vanish = ",".join(row["weyl_vanishing_sides"]) or "none"
        lines.append(
            f"| {params} | {row['scalar_curvature']} | {row['is_einstein']} "
            f"| {vanish} | ({row['ck_plus']},{row['ck_minus']}) | {row['case']} |"
        )
    lines.append("")
    lines.append(
        f"summary: rows = {summary['rows']}, errors = {summary['errors']}, "
        f"dim>=2 implies vanishing Weyl block: {'ok' if summary['dim2_implies_weyl_zero'] else 'VIOLATED'}"
    )
    return "\n".join(lines) + "\n"


def _cmd_selftest(args):
    notes = []
    if args.backend == FLOAT:
        notes.append(
            "note: inputs are rational; the exact backend is preferred and "
            "these suites run it with a float tolerance only on request"
        )
    results = identities.run_all(trials=args.trials, seed=args.seed, backend=args.backend)
    failed = [r for r in results if not r.passed]
    for note in notes:
        sys.stdout.write(note + "\n")
    for r in results:
        status = "ok" if r.passed else "FAIL"
        detail = f" ({r.detail})" if r.detail else ""
        sys.stdout.write(f"{status:4s} {r.name}{detail}\n")
    sys.stdout.write(
        f"selftest: {len(results) - len(failed)}/{len(results)} identity suites passed\n"
    )
    return EXIT_OK if not failed else 1


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the parse-error status
        return int(exc.code) if exc.code else 0
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
        raise ParseError(f"unknown command {args.command!r}")
    except (ParseError, ScalarError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ValidationError as exc:
        sys.stderr.write(f"validation error: {exc}\n")
        for triple, defect in exc.violations:
            rendered = ", ".join(format_scalar(x) for x in defect)
            sys.stderr.write(f"  Jacobi defect at {triple}: [{rendered}]\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
