"""charpoly-census command line."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import pipeline
from .errors import CensusError, InfeasibleError
from .pipeline import fmt6
from .problem import load_problem

COMMANDS = ("invariants", "local", "constant", "census", "verify")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="charpoly-census",
        description="Count algebra elements with a given characteristic polynomial "
        "and compare with the predicted asymptotic constant.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--spec", required=True, help="problem spec (JSON)")
    ap.add_argument("--t-max", type=Fraction, default=None, help="largest norm bound T")
    ap.add_argument("--grid", type=int, default=None, help="number of grid points")
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--out", default=None, help="CSV path (default: stdout)")
    return ap


def _cmd_invariants(problem, args, out):
    inv = pipeline.invariants(problem)
    for key, value in inv.as_dict().items():
        if key == "R":
            value = fmt6(inv.R)
        print(f"{key} = {value}", file=out)


def _cmd_local(problem, args, out):
    for prof in pipeline.profiles(problem):
        print(prof.describe(), file=out)


def _cmd_constant(problem, args, out):
    K = pipeline.constant(problem)
    for name, value in K.breakdown():
        print(f"{name} = {fmt6(value)}", file=out)


def _write_csv(text, args, out):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def _census(problem, args):
    return pipeline.census_csv(problem, args.t_max, args.grid, args.threads)


def _infeasible(series):
    raise InfeasibleError(
        f"p is not realised at division prime {series.infeasible_prime}; counts are zero",
        prime=series.infeasible_prime,
    )


def _cmd_census(problem, args, out):
    text, series, _ = _census(problem, args)
    _write_csv(text, args, out)
    if series.infeasible_prime is not None:
        _infeasible(series)


def _cmd_verify(problem, args, out):
    text, series, K = _census(problem, args)
    if args.out:
        _write_csv(text, args, out)
    C = K.C if K is not None and series.infeasible_prime is None else 0
    print(f"C = {fmt6(C)}   exponent = {problem.exponent}", file=out)
    print(f"{'T':>12} {'N(T)':>12} {'N/T^m':>12} {'ratio':>12}", file=out)
    for T, N, per, ratio in pipeline.convergence_table(series, C, problem.exponent):
        print(f"{fmt6(T):>12} {N:>12} {fmt6(per):>12} {fmt6(ratio):>12}", file=out)
    if series.infeasible_prime is not None:
        _infeasible(series)


HANDLERS = {
    "invariants": _cmd_invariants,
    "local": _cmd_local,
    "constant": _cmd_constant,
    "census": _cmd_census,
    "verify": _cmd_verify,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        problem = load_problem(args.spec)
        HANDLERS[args.command](problem, args, out)
    except CensusError as exc:
        print(f"error: {exc.reason}: {exc}", file=err)
        return exc.exit_code
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
