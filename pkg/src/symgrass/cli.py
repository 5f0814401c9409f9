"""Command-line front end.

Subcommands: params, gen, mindist, wenum, dualmin, verify-tables, check,
report. All numeric I/O uses integer element reprs. The default
operation budget comes from SYMGRASS_BUDGET; the kernel backend from
SYMGRASS_BACKEND (auto, numba or numpy). Exit code is 0 iff no executed
check failed (budget skips do not fail).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import codes, verify
from .errors import SymgrassError
from .formats import write_generator
from .gf import field_from_order
from .minors import combination
from .report import VerificationReport, report_emit
from .symspace import catalan, dim_sym


def _witness_report(ell: int, q: int) -> codes.WeightReport:
    spec = field_from_order(q)
    wwt = verify.witness_weight(ell, spec)
    return codes.WeightReport(
        d=wwt,
        witness=None,
        histogram=None,
        enumerated=1,
        elapsed_s=0.0,
        exhaustive=False,
        n=q ** dim_sym(ell),
        k=catalan(ell + 1),
        q=q,
        ell=ell,
    )


def cmd_params(args) -> int:
    spec = field_from_order(args.q)
    code = codes.cached_code(args.ell, spec)
    out = {
        "ell": args.ell,
        "q": args.q,
        "n": code.n,
        "k": code.rank(),
        "d_formula": verify.theorem_distance(args.ell, args.q) if args.ell >= 2 else None,
    }
    print(json.dumps(out))
    return 0


def cmd_gen(args) -> int:
    spec = field_from_order(args.q)
    variant = codes.SYMPLECTIC if args.variant == "symplectic" else codes.AFFINE
    code = codes.build_generator(args.ell, spec, variant)
    text = write_generator(code)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_mindist(args) -> int:
    spec = field_from_order(args.q)
    if args.exhaustive:
        code = codes.cached_code(args.ell, spec)
        rep = codes.min_distance_exhaustive(
            code, budget=args.budget, workers=args.workers
        )
    else:
        rep = _witness_report(args.ell, args.q)
    print(json.dumps(rep.to_dict()))
    return 0


def cmd_wenum(args) -> int:
    spec = field_from_order(args.q)
    code = codes.cached_code(args.ell, spec)
    rep = codes.weight_enumerator(code, budget=args.budget, workers=args.workers)
    print(json.dumps(rep.to_dict()))
    return 0


def cmd_dualmin(args) -> int:
    spec = field_from_order(args.q)
    code = codes.cached_code(args.ell, spec)
    found = codes.dual_low_weight_scan(code, wmax=args.wmax, budget=args.budget)
    if found is None:
        print(json.dumps({"ell": args.ell, "q": args.q, "dual_distance": "none",
                          "wmax": args.wmax}))
    else:
        w, witness = found
        print(
            json.dumps(
                {
                    "ell": args.ell,
                    "q": args.q,
                    "dual_distance": w,
                    "support": [m.index for m in witness.support],
                    "coefficients": witness.coefficients,
                }
            )
        )
    return 0


def cmd_verify_tables(args) -> int:
    q_list = [int(v) for v in args.q_list.split(",")]
    report, rows = verify.run_verify_tables(
        args.ell, q_list, budget=args.budget, workers=args.workers
    )
    sys.stdout.write(verify.tables_csv(rows))
    if args.report_out:
        with open(args.report_out, "w") as fh:
            fh.write(report_emit(report, "json"))
    if args.format != "csv":
        sys.stdout.write(report_emit(report, args.format))
    return 1 if report.failed() else 0


def cmd_check(args) -> int:
    params = {}
    if args.count is not None:
        params["count"] = args.count
    if args.seed is not None:
        params["seed"] = args.seed
    report = verify.run_lemma_checks(args.suite, **params)
    sys.stdout.write(report_emit(report, args.format))
    if args.report_out:
        with open(args.report_out, "w") as fh:
            fh.write(report_emit(report, "json"))
    return 1 if report.failed() else 0


def cmd_report(args) -> int:
    with open(args.infile) as fh:
        data = json.load(fh)
    report = VerificationReport(
        parameters=data.get("parameters", {}),
        created=data.get("created", ""),
    )
    from .report import CheckRecord

    for c in data.get("checks", []):
        report.add(
            CheckRecord(
                name=c["name"],
                claim=c.get("claim", ""),
                expected=c.get("expected"),
                computed=c.get("computed"),
                status=c["status"],
                source=c.get("source", ""),
                note=c.get("note", ""),
                elapsed_s=c.get("elapsed_s", 0.0),
            )
        )
    sys.stdout.write(report_emit(report, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symgrass",
        description="construct and audit evaluation codes over symmetric matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=True, workers=False):
        p.add_argument("--ell", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        if budget:
            p.add_argument("--budget", type=int, default=None,
                           help="operation budget (default from SYMGRASS_BUDGET)")
        if workers:
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("params", help="length, dimension and distance formula")
    common(p, budget=False)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("gen", help="write a generator matrix file")
    common(p, budget=False)
    p.add_argument("--variant", choices=["symplectic", "affine"], default="symplectic")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mindist", help="witness or exhaustive minimum distance")
    common(p, workers=True)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("wenum", help="full weight histogram")
    common(p, workers=True)
    p.set_defaults(func=cmd_wenum)

    p = sub.add_parser("dualmin", help="search dual codewords of weight <= wmax")
    common(p)
    p.add_argument("--wmax", type=int, default=4)
    p.set_defaults(func=cmd_dualmin)

    p = sub.add_parser("verify-tables", help="audit the parameter tables")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--q-list", required=True, help="comma-separated field orders")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    p.add_argument("--report-out", default=None)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("check", help="run one verification suite")
    p.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--report-out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", help="re-emit a stored JSON report")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SymgrassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
