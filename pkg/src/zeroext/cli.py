"""Command-line entry points.

Exit codes: 0 success, 1 internal failure or failed check, 2 input error,
3 NP-hard verdict, 4 infeasible instance.
"""

import argparse
import sys

from .checks import run_suites
from .errors import (
    InfeasibleStart,
    ParseError,
    SemanticError,
    UnknownLabel,
    ZeroExtError,
)
from .orientation import classify
from .problemspec import parse_instance
from .rationals import INF, fmt
from .solver import brute_force_min, brute_limit_from_env, dsda, sda

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NPHARD = 3
EXIT_INFEASIBLE = 4


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _print_certificate(cert, out):
    print(f"certificate: {cert.kind}", file=out)
    if cert.kind == "not_modular":
        print(f"  median-free triple: {' '.join(cert.witness)}", file=out)
        return
    for step in cert.steps:
        src = f"({step.src[0]},{step.src[1]})"
        dst = f"({step.dst[0]},{step.dst[1]})"
        wit = ",".join(step.witness)
        how = "common 4-cycle" if step.relation == "parallel" else "shortest subpath"
        print(f"  {src} ~ {dst}   [{step.relation}: {how} {wit}]", file=out)


def _print_orientation(o, out, records):
    if records:
        for (a, b), (t, h) in sorted(o.edges.items()):
            print(f"record orient kind=edge tail={t} head={h}", file=out)
        for (a, b), (t, h) in sorted(o.fpairs.items()):
            print(f"record orient kind=fpair tail={t} head={h}", file=out)
        return
    print("orientation:", file=out)
    for (a, b), (t, h) in sorted(o.edges.items()):
        print(f"  edge  {t} -> {h}", file=out)
    for (a, b), (t, h) in sorted(o.fpairs.items()):
        print(f"  fpair {t} -> {h}", file=out)


def run_classify(spec, out=sys.stdout, records=False):
    metric = spec.to_metric()
    result = classify(metric, spec.f_pairs)
    if result.tractable:
        if records:
            print("record verdict tractable=true", file=out)
        else:
            print("TRACTABLE", file=out)
        _print_orientation(result.orientation, out, records)
        return EXIT_OK
    if records:
        print(f"record verdict tractable=false kind={result.certificate.kind}", file=out)
    else:
        print("NP-HARD", file=out)
    _print_certificate(result.certificate, out)
    return EXIT_NPHARD


def run_solve(spec, args, out=sys.stdout, records=False):
    metric = spec.to_metric()
    result = classify(metric, spec.f_pairs)
    if not result.tractable:
        print("NP-HARD", file=out)
        _print_certificate(result.certificate, out)
        return EXIT_NPHARD
    inst = spec.to_instance()
    cx = result.complex
    method = args.method or spec.options.get("method", "dsda")
    local = args.local or spec.options.get("local")
    start = tuple(args.start) if args.start else spec.options.get("start")
    want_trace = args.trace or spec.options.get("trace") == "on"
    limit = brute_limit_from_env(spec.options.get("brute_limit", 10**6))

    try:
        if method == "brute":
            assignment, value = brute_force_min(inst, limit)
            if value == INF:
                print("value inf", file=out)
                return EXIT_INFEASIBLE
            report = None
        else:
            driver = dsda if method == "dsda" else sda
            solver_method = local or "auto"
            report = driver(
                inst, cx, start=start, method=solver_method, brute_limit=limit
            )
            assignment, value = report.assignment, report.value
    except InfeasibleStart:
        print("value inf", file=out)
        return EXIT_INFEASIBLE

    if records:
        print(f"record solve value={fmt(value)} iterations={getattr(report, 'iterations', 0)}", file=out)
        for i, lab in enumerate(assignment):
            print(f"record assign var={i} label={lab}", file=out)
        if report is not None and want_trace:
            for k, step in enumerate(report.trace, start=1):
                print(
                    "record trace step={} minus={} plus={} diamond={} value={}".format(
                        k,
                        ",".join(step.x_minus),
                        ",".join(step.x_plus),
                        ",".join(step.x_diamond),
                        fmt(step.value),
                    ),
                    file=out,
                )
    else:
        print("assignment " + " ".join(assignment), file=out)
        print(f"value {fmt(value)}", file=out)
        if report is not None:
            print(f"iterations {report.iterations}", file=out)
        if report is not None and want_trace:
            for k, step in enumerate(report.trace, start=1):
                print(
                    f"  step {k}: minus=({','.join(step.x_minus)}) "
                    f"plus=({','.join(step.x_plus)}) "
                    f"diamond=({','.join(step.x_diamond)}) value={fmt(step.value)}",
                    file=out,
                )
    if args.cross_check and method != "brute":
        _, best = brute_force_min(inst, limit)
        agree = best == value
        print(f"cross-check brute={fmt(best)} agree={'yes' if agree else 'NO'}", file=out)
        if not agree:
            return EXIT_INTERNAL
    return EXIT_OK


def run_check(spec, suite, out=sys.stdout):
    metric = spec.to_metric()
    result = classify(metric, spec.f_pairs)
    if not result.tractable:
        print("NP-HARD", file=out)
        _print_certificate(result.certificate, out)
        return EXIT_NPHARD
    inst = spec.to_instance()
    from .metric import underlying_graph

    g = underlying_graph(metric)
    results = run_suites(
        inst, result.complex, g, spec.f_pairs, result.orientation, suite
    )
    failed = False
    for name, ok, detail in results:
        if ok:
            print(f"[pass] {name}", file=out)
        else:
            failed = True
            print(f"[FAIL] {name}: {detail}", file=out)
    return EXIT_INTERNAL if failed else EXIT_OK


def run_envelope(spec, p, q, at, sigma, out=sys.stdout):
    from .semilattice import envelope

    metric = spec.to_metric()
    result = classify(metric, spec.f_pairs)
    if not result.tractable:
        print("NP-HARD", file=out)
        _print_certificate(result.certificate, out)
        return EXIT_NPHARD
    cx = result.complex
    if at is None:
        at = cx.meet(p, q)
        if at is None:
            print(f"error: {p} and {q} have no meet; pass --at explicitly", file=out)
            return EXIT_INPUT
    sigma = sigma or "up"
    lat = cx.principal_semilattice(at, sigma)
    rep = envelope(lat, p, q)
    print(f"base: {at} sigma: {sigma}", file=out)
    print(rep.render(), end="", file=out)
    return EXIT_OK


def run_subdivide(spec, out=sys.stdout):
    metric = spec.to_metric()
    result = classify(metric, spec.f_pairs)
    if not result.tractable:
        print("NP-HARD", file=out)
        _print_certificate(result.certificate, out)
        return EXIT_NPHARD
    sub = result.complex.two_subdivision()
    print(sub.as_complex("boolean_pair").dump(), end="", file=out)
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="zeroext",
        description="Classify and exactly solve generalized minimum 0-extension problems.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "records"), default="text", help="output style"
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_classify = subs.add_parser(
        "classify", parents=[common], help="tractable or NP-hard, with evidence"
    )
    p_classify.add_argument("file")

    p_solve = subs.add_parser("solve", parents=[common], help="minimize the instance exactly")
    p_solve.add_argument("file")
    p_solve.add_argument("--method", choices=("dsda", "sda", "brute"))
    p_solve.add_argument("--local", choices=("blp", "brute"))
    p_solve.add_argument("--start", nargs="+")
    p_solve.add_argument("--trace", action="store_true")
    p_solve.add_argument("--cross-check", action="store_true")

    p_check = subs.add_parser(
        "check", parents=[common], help="run invariant suites on the instance"
    )
    p_check.add_argument("file")
    p_check.add_argument(
        "--suite",
        choices=("structure", "semilattice", "solver", "all"),
        default="all",
    )

    p_env = subs.add_parser(
        "envelope", parents=[common], help="envelope report for a vertex pair"
    )
    p_env.add_argument("file")
    p_env.add_argument("p")
    p_env.add_argument("q")
    p_env.add_argument("--at", help="base vertex (default: meet of the pair)")
    p_env.add_argument("--sigma", choices=("up", "down", "plus", "minus"))

    p_sub = subs.add_parser(
        "subdivide", parents=[common], help="emit the 2-subdivision complex"
    )
    p_sub.add_argument("file")
    return parser


def main(argv=None, out=sys.stdout, err=sys.stderr):
    parser = _build_parser()
    args = parser.parse_args(argv)
    records = args.format == "records"
    try:
        spec = _load(args.file)
    except (ParseError, SemanticError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    try:
        if args.command == "classify":
            return run_classify(spec, out, records)
        if args.command == "solve":
            return run_solve(spec, args, out, records)
        if args.command == "check":
            return run_check(spec, args.suite, out)
        if args.command == "envelope":
            return run_envelope(spec, args.p, args.q, args.at, args.sigma, out)
        if args.command == "subdivide":
            return run_subdivide(spec, out)
        raise AssertionError(args.command)
    except (ParseError, SemanticError, UnknownLabel) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except ZeroExtError as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL


def entry():
    sys.exit(main())
