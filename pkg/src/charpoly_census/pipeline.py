"""Orchestration shared by the command line and the acceptance suite."""

from __future__ import annotations

import io

from .census import CensusSeries, convergence_table, geometric_grid, run_census
from .constant import AsymptoticConstant, assemble_constant
from .errors import HypothesisError, InfeasibleError
from .local import local_profiles
from .number_field import FieldInvariants, compute_invariants_quadratic, load_invariants_fixture
from .poly import is_irreducible_over_Q, is_maximal
from .problem import ProblemSpec
from .quaternion import verify_order

CSV_HEADER = "T,count,count_over_Tm,predicted_C,ratio"


def check_hypotheses(problem: ProblemSpec):
    p = problem.polynomial
    if not is_irreducible_over_Q(p, problem.irreducibility_certificate):
        raise HypothesisError(f"{p} is not certified irreducible over Q")
    if not is_maximal(p):
        raise HypothesisError(f"Z[x]/({p}) is not integrally closed", reason="not_integrally_closed")
    problem.algebra.ramified  # definite algebras raise here
    verify_order(problem.algebra)


def invariants(problem: ProblemSpec) -> FieldInvariants:
    check_hypotheses(problem)
    p = problem.polynomial
    if p.degree == 2:
        return compute_invariants_quadratic(p)
    return load_invariants_fixture(problem.field_invariants, p)


def profiles(problem: ProblemSpec):
    check_hypotheses(problem)
    return local_profiles(problem.polynomial, problem.algebra)


def constant(problem: ProblemSpec) -> AsymptoticConstant:
    return assemble_constant(invariants(problem), profiles(problem), problem.degree)


def census(problem: ProblemSpec, T_max=None, points=None, threads=None) -> CensusSeries:
    check_hypotheses(problem)
    grid = geometric_grid(
        problem.T_max if T_max is None else T_max,
        problem.grid_points if points is None else points,
    )
    return run_census(
        problem.algebra, problem.polynomial, grid, problem.threads if threads is None else threads
    )


def fmt6(x):
    if isinstance(x, int):
        return str(x)
    if hasattr(x, "numerator") and x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.6g}"


def csv_text(series: CensusSeries, C, exponent) -> str:
    """CSV with 12 significant digits and LF line endings."""
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for T, N, per, ratio in convergence_table(series, C, exponent):
        out.write(f"{float(T):.12g},{N},{per:.12g},{float(C or 0):.12g},{ratio:.12g}\n")
    return out.getvalue()


def census_csv(problem: ProblemSpec, T_max=None, points=None, threads=None):
    """(csv text, series, constant or None); an infeasible problem gives zero rows."""
    series = census(problem, T_max, points, threads)
    try:
        K = constant(problem)
    except InfeasibleError:
        K = None
    C = K.C if K is not None and series.infeasible_prime is None else 0
    return csv_text(series, C, problem.exponent), series, K
