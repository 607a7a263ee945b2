"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on
usage or configuration errors.  Results go to stdout (or --output);
progress notes go to stderr.  CHARQUANT_THREADS bounds the worker pool
used by the aggregate report.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .azumaya import azumaya_suite
from .complexes import (
    ComplexSpec,
    FAMILY_HH,
    TruncationParams,
    dold_kan_crosscheck,
    full_quant_check,
    full_quant_stability,
    hochschild_cohomology,
    reduced_complex,
    resolution_check,
)
from .errors import CharquantError
from .identities import identity_suites
from .modp import validate_prime
from .morita import fg_composite
from .polydiff import COEFF_DRES, COEFF_O
from .reports import ReportDocument, RunConfig
from .twosided import two_sided_check

USAGE_ERROR = 2
CHECK_FAILED = 1


def _parse_primes(raw: str) -> tuple:
    try:
        ps = tuple(int(tok) for tok in raw.split(",") if tok.strip())
        for p in ps:
            validate_prime(p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if not ps:
        raise argparse.ArgumentTypeError("empty prime list")
    return ps


def _prime(raw: str) -> int:
    try:
        return validate_prime(int(raw))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charquant",
        description=(
            "Exact verification of characteristic-p operator algebras: "
            "Hochschild-type cohomology over F_p[t], Azumaya witnesses, "
            "brace identities, and the two-sided comparison complex."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--output", metavar="PATH", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    hoch = sub.add_parser("hochschild", parents=[common],
                          help="operator-coefficient cohomology over F_p[t]")
    hoch.add_argument("--p", type=_prime, required=True)
    hoch.add_argument(
        "--coefficients",
        choices=("structure", "restricted-d", "full-d"),
        default="restricted-d",
    )
    hoch.add_argument("--max-degree", type=_positive, default=3)
    hoch.add_argument("--max-order", type=_positive, default=0)
    hoch.add_argument("--normalized", action="store_true",
                      help="assemble on the degeneracy-free basis")

    reso = sub.add_parser("resolution-check", parents=[common], help="two-periodic enveloping resolution")
    reso.add_argument("--p", type=_prime, required=True)

    redu = sub.add_parser("reduced-complex", parents=[common], help="alternating derivation complex")
    redu.add_argument("--p", type=_prime, required=True)
    redu.add_argument("--max-degree", type=_positive, default=5)

    azu = sub.add_parser("azumaya", parents=[common], help="center, fiber, and endomorphism checks")
    azu.add_argument("--p", type=_prime, required=True)
    azu.add_argument("--points", default=None,
                     help="comma-separated fiber points (default: all of F_p)")

    iden = sub.add_parser("identities", parents=[common], help="seeded cosimplicial/cup/brace suites")
    iden.add_argument("--p", type=_prime, required=True)
    iden.add_argument("--samples", type=_positive, default=100)
    iden.add_argument("--seed", type=int, default=42)

    two = sub.add_parser("two-sided", parents=[common], help="two-sided complex and the chi map")
    two.add_argument("--p", type=_prime, required=True)
    two.add_argument("--max-degree", type=_positive, default=2)

    rep = sub.add_parser("report", parents=[common], help="aggregate suites into one document")
    rep.add_argument("--all", action="store_true", required=True)
    rep.add_argument("--p", type=_parse_primes, required=True, metavar="P[,P...]")
    rep.add_argument("--max-degree", type=_positive, default=3)
    rep.add_argument("--max-order", type=_positive, default=0)
    rep.add_argument("--samples", type=_positive, default=100)
    rep.add_argument("--seed", type=int, default=42)
    return parser


def _worker_count() -> int:
    raw = os.environ.get("CHARQUANT_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(value, 1)


def _run_single(args) -> ReportDocument:
    config = RunConfig(
        p_list=(args.p,),
        max_degree=getattr(args, "max_degree", 3),
        max_order=getattr(args, "max_order", 0),
        samples=getattr(args, "samples", 100),
        seed=getattr(args, "seed", 42),
        output_format=args.format,
        output_path=args.output,
    )
    doc = ReportDocument(config=config)
    p = args.p
    if args.command == "hochschild":
        n = args.max_degree
        if args.coefficients == "structure":
            doc.add(hochschild_cohomology(
                ComplexSpec(FAMILY_HH, COEFF_O, p, TruncationParams(N=n), args.normalized)))
        elif args.coefficients == "restricted-d":
            doc.add(hochschild_cohomology(
                ComplexSpec(FAMILY_HH, COEFF_DRES, p, TruncationParams(N=n), args.normalized)))
        else:
            m = args.max_order or 2 * p
            doc.add(full_quant_check(p, TruncationParams(N=2, M=m)))
    elif args.command == "resolution-check":
        doc.add(resolution_check(p))
    elif args.command == "reduced-complex":
        doc.add(reduced_complex(p, args.max_degree))
    elif args.command == "azumaya":
        points = None
        if args.points is not None:
            points = [int(tok) for tok in args.points.split(",") if tok.strip()]
        doc.add(azumaya_suite(p, points=points))
    elif args.command == "identities":
        doc.add(identity_suites(p, samples=args.samples, seed=args.seed))
    elif args.command == "two-sided":
        doc.add(two_sided_check(p, args.max_degree))
    return doc


def _report_all(args) -> ReportDocument:
    config = RunConfig(
        p_list=args.p,
        max_degree=args.max_degree,
        max_order=args.max_order,
        samples=args.samples,
        seed=args.seed,
        output_format=args.format,
        output_path=args.output,
    )
    doc = ReportDocument(config=config)
    jobs = []
    for p in args.p:
        n = config.max_degree
        order = config.effective_order(p)
        jobs.append(lambda p=p, n=n: hochschild_cohomology(
            ComplexSpec(FAMILY_HH, COEFF_DRES, p, TruncationParams(N=n), normalized=True)))
        jobs.append(lambda p=p, n=n: hochschild_cohomology(
            ComplexSpec(FAMILY_HH, COEFF_O, p, TruncationParams(N=n))))
        jobs.append(lambda p=p: resolution_check(p))
        jobs.append(lambda p=p: reduced_complex(p, 5))
        jobs.append(lambda p=p: azumaya_suite(p))
        jobs.append(lambda p=p, order=order: full_quant_stability(
            p, TruncationParams(N=2, M=order)))
        jobs.append(lambda p=p: two_sided_check(p, 2, seed=config.seed))
        jobs.append(lambda p=p: identity_suites(p, samples=config.samples, seed=config.seed))
        jobs.append(lambda p=p: fg_composite(p, 2, seed=config.seed))
        jobs.append(lambda p=p, n=n: dold_kan_crosscheck(
            ComplexSpec(FAMILY_HH, COEFF_DRES, p, TruncationParams(N=min(n, 2)))))
    workers = _worker_count()
    if workers == 1:
        results = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: job(), jobs))
    for report in results:
        doc.add(report)
    return doc


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report":
            doc = _report_all(args)
        else:
            doc = _run_single(args)
    except CharquantError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    rendered = doc.render()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(rendered)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(rendered)
    return 0 if doc.overall_pass() else CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
