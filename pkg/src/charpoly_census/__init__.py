"""Counting integral elements with a prescribed characteristic polynomial."""

from .census import (
    CensusSeries,
    convergence_table,
    geometric_grid,
    matrix_census_generic,
    matrix_census_n2,
    order_census_quaternion,
    run_census,
)
from .constant import AsymptoticConstant, assemble_constant, lambda_fn, unit_ball_volume, zeta
from .local import LocalProfile, local_profile, local_profiles
from .number_field import FieldInvariants, compute_invariants_quadratic
from .poly import MonicIntPolynomial, factor_mod_q
from .quaternion import AlgebraSpec, split_algebra, verify_order

__version__ = "0.1.0"
