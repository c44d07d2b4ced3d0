"""``qfilter`` command-line interface.

    qfilter solve        --ensemble FILE [--out FILE] [--tol T]
    qfilter oracle-check --ensemble FILE [--steps N] [--tol T] [--out FILE]
    qfilter simulate     --ensemble FILE [--trials N] [--seed S] [--phi A --chi B]
                         [--workers W] [--out FILE]
    qfilter sweep        --beta-min B0 --beta-max B1 --points N [--out FILE]
    qfilter embed        --ensemble FILE [--tol T] [--out FILE]

JSON (or CSV for ``sweep``) goes to stdout or ``--out``; diagnostics go to
stderr.  Exit status: 0 success, 1 oracle gap above ``--tol``, 2 bad input.
``QFILTER_SEED``, when set, overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import os
import sys

from . import io
from .ensemble import RANK_TOL
from .errors import QFilterError
from .families import ratio_sweep
from .montecarlo import SimConfig, simulate
from .oracle import DEFAULT_STEPS, cross_check
from .solver import detection_pair, solve

ORACLE_TOL = 1e-6


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfilter",
        description="Minimum-error discrimination between two subsets of states in a plane.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("solve", "optimal measurement and success probability")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--tol", type=float, default=RANK_TOL, help="rank tolerance for raw states")

    p = add("oracle-check", "compare the solver with grid search and the Helstrom bound")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--tol", type=float, default=ORACLE_TOL, help="largest accepted gap")

    p = add("simulate", "Monte Carlo of the measurement")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--trials", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--phi", type=float)
    p.add_argument("--chi", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tol", type=float, default=RANK_TOL, help="rank tolerance for raw states")

    p = add("sweep", "filtering vs. individual error over the symmetric family")
    p.add_argument("--beta-min", type=float, required=True)
    p.add_argument("--beta-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)

    p = add("embed", "rewrite an ensemble in two-dimensional plane coordinates")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--tol", type=float, default=RANK_TOL, help="rank tolerance for raw states")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sweep_csv(args) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["beta", "p_err_filter_formula", "p_err_filter_solver", "p_err_individual", "ratio"]
    )
    for pt in ratio_sweep(args.beta_min, args.beta_max, args.points):
        row = (pt.beta, pt.p_err_filter, pt.p_err_filter_solver, pt.p_err_individual, pt.ratio)
        writer.writerow(["%.15g" % x for x in row])
    return buf.getvalue()


def _dispatch(args) -> int:
    if args.command == "sweep":
        _emit(_sweep_csv(args), args.out)
        return 0

    if args.command == "oracle-check":
        ensemble = io.load_ensemble(args.ensemble)
        report = cross_check(ensemble, args.steps)
        _emit(io.dumps(report.to_dict()) + "\n", args.out)
        if not report.max_abs_gap < args.tol:
            print(f"oracle gap {report.max_abs_gap:.3e} exceeds {args.tol:g}", file=sys.stderr)
            return 1
        return 0

    ensemble = io.load_ensemble(args.ensemble, args.tol)
    if args.command == "solve":
        payload = solve(ensemble).to_dict()
    elif args.command == "embed":
        payload = io.ensemble_to_dict(ensemble)
    else:
        seed = int(os.environ.get("QFILTER_SEED", args.seed))
        if (args.phi is None) != (args.chi is None):
            raise QFilterError("--phi and --chi must be given together")
        if args.phi is None:
            measurement = solve(ensemble).measurement
        else:
            measurement = detection_pair(ensemble, args.phi, args.chi)
        config = SimConfig(args.trials, seed)
        payload = simulate(ensemble, measurement, config, workers=args.workers).to_dict()
    _emit(io.dumps(payload) + "\n", args.out)
    return 0


def run(argv=None) -> int:
    """Run one subcommand and return its exit status."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (QFilterError, ValueError, OSError) as exc:
        print(f"qfilter {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
