"""Command-line front end: ``solve``, ``check``, ``oracle`` and ``list``.

Exit status is 0 on success, 1 on usage errors and 2 when a solve or a
diagnostic fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .. import geometry as geo
from ..errors import DomainError, NumericError, UsageError
from ..solver import SolverConfig, Status, solve
from . import checks
from .benchmarks import REGISTRY, get_benchmark
from .diagnostics import diagnose
from .io import load_problem_file, write_report_json, write_trace_csv

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text):
    try:
        return np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _point_arg(values, m_desc, what):
    if values.size != int(np.prod(m_desc.shape)):
        raise UsageError(f"{what} needs {int(np.prod(m_desc.shape))} values for {m_desc}, got {values.size}")
    p = values.reshape(m_desc.shape)
    bad = geo.validate_point(m_desc, p)
    if bad is not None:
        raise UsageError(f"{what} is not a point of {m_desc}: {bad}")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pareto-descent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run the multicriteria descent on a benchmark")
    s.add_argument("--problem", required=True, help="registry key or JSON problem file")
    s.add_argument("--p0", type=_floats, help="start point, comma separated (SPD: row-major)")
    s.add_argument("--beta", type=float, default=0.5)
    s.add_argument("--eps", type=float, default=1e-6)
    s.add_argument("--max-iters", type=int, default=1000)
    s.add_argument("--max-halvings", type=int, default=64)
    s.add_argument("--trace", type=Path, help="write per-iteration CSV here")
    s.add_argument("--trace-every", type=int, default=1, help="keep every N-th record in the CSV")
    s.add_argument("--report", type=Path, help="write the JSON report here")
    s.add_argument("--ref-point", help="reference point for Fejér slacks, or 'limit' for the run's final point")

    c = sub.add_parser("check", help="gradient and geometry self-checks")
    c.add_argument("--problem", required=True, help="registry key, or 'all'")
    c.add_argument("--seed", type=int, default=0)

    o = sub.add_parser("oracle", help="compare the direction solver with brute-force enumeration")
    o.add_argument("--trials", type=int, default=200)
    o.add_argument("--m", type=int, help="number of gradients (default: random 1..5)")
    o.add_argument("--n", type=int, help="dimension parameter (default: random 2..8)")
    o.add_argument("--manifold", help="Euclidean, PositiveOctant, Hypercube or SPDCone (default: random)")
    o.add_argument("--seed", type=int, default=0)

    sub.add_parser("list", help="print the benchmark registry")
    return parser


def cmd_list(args) -> int:
    for spec in REGISTRY.values():
        print(f"{spec.key:<12} {spec.manifold.kind.value:<15} n={spec.manifold.n}  m={spec.m}  {spec.description}")
    return EXIT_OK


def cmd_solve(args) -> int:
    if Path(args.problem).is_file():
        spec, prob, p0, ref = load_problem_file(args.problem)
    else:
        spec = get_benchmark(args.problem)
        prob, p0, ref = spec.problem(), spec.default_p0, None
    if args.p0 is not None:
        p0 = _point_arg(args.p0, prob.manifold, "--p0")
    cfg = SolverConfig(beta=args.beta, eps_crit=args.eps, max_iters=args.max_iters,
                       max_halvings=args.max_halvings)
    if args.trace_every < 1:
        raise UsageError("--trace-every must be >= 1")
    if args.ref_point is not None and args.ref_point != "limit":
        ref = _point_arg(_floats(args.ref_point), prob.manifold, "--ref-point")

    report = solve(prob, p0, cfg)
    if args.ref_point == "limit":
        ref = report.final_point
    diag = diagnose(report, prob, ref_point=ref)

    print(f"problem     {prob.name} on {prob.manifold}")
    print(f"status      {report.status.value} after {report.iterations} iterations")
    print(f"final_f     {np.array2string(report.final_f, precision=10)}")
    print(f"criticality {report.final_criticality:.3e}")
    print(f"monotone    {diag.monotone_ok}")
    print(f"summability {diag.summability_lhs:.6e} <= {diag.summability_rhs:.6e}: {diag.summability_ok}")
    if diag.fejer_max_slack is not None:
        print(f"fejer       max slack {diag.fejer_max_slack:.3e} (tol {diag.fejer_tolerance:.1e}, ref in U: {diag.ref_in_u})")
    if report.message:
        print(f"message     {report.message}")

    if args.trace is not None:
        write_trace_csv(report, args.trace, prob.manifold, ref, every=args.trace_every)
    if args.report is not None:
        write_report_json(report, args.report, diag)

    ok = report.status is Status.CRITICAL and diag.monotone_ok and diag.summability_ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args) -> int:
    keys = list(REGISTRY) if args.problem.lower() == "all" else [get_benchmark(args.problem).key]
    ok = True
    for key in keys:
        print(f"== {key}")
        for res in checks.run_checks(REGISTRY[key], seed=args.seed):
            print(res.line())
            ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    kind = geo.ManifoldDescriptor.parse(args.manifold, 1).kind if args.manifold else None
    for name in ("m", "n"):
        val = getattr(args, name)
        if val is not None and val < 1:
            raise UsageError(f"--{name} must be >= 1")
    stats = checks.oracle_trials(args.trials, m=args.m, n=args.n, manifold=kind, seed=args.seed)
    print(f"trials          {stats.trials}")
    print(f"max |v - v*|_p  {stats.max_v_dev:.3e}  (tol 1e-07)")
    print(f"max |th - th*|  {stats.max_theta_dev:.3e}  (tol 1e-09)")
    print(f"stationarity    {stats.max_stationarity:.3e}  (tol 1e-09)")
    print(f"seconds         {stats.seconds:.2f}")
    return EXIT_OK if stats.passed else EXIT_FAIL


COMMANDS = {"solve": cmd_solve, "check": cmd_check, "oracle": cmd_oracle, "list": cmd_list}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
