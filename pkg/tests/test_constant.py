from fractions import Fraction as F

import pytest
from mpmath import mp, mpf, pi, sqrt

from charpoly_census.constant import (
    assemble_constant,
    lambda_fn,
    orthogonal_group_volume,
    unit_ball_volume,
    zeta,
)
from charpoly_census.errors import InfeasibleError
from charpoly_census.local import LocalProfile, local_profiles
from charpoly_census.number_field import FieldInvariants, compute_invariants_quadratic
from charpoly_census.quaternion import AlgebraSpec, split_algebra
from conftest import HURWITZ_LIKE, poly

C_SPLIT = mpf("1.64404105213")


@pytest.mark.parametrize("s, closed", [(2, lambda: pi**2 / 6), (4, lambda: pi**4 / 90), (6, lambda: pi**6 / 945)])
def test_zeta_even(s, closed):
    with mp.workdps(50):
        assert abs(zeta(s) - closed()) < mpf(10) ** -40


def test_zeta_odd():
    with mp.workdps(50):
        assert abs(zeta(3) - mp.zeta(3)) < mpf(10) ** -40
        assert abs(zeta(mpf(5) / 2) - mp.zeta(mpf(5) / 2)) < mpf(10) ** -40
    with pytest.raises(ValueError):
        zeta(1)


def test_lambda_values():
    with mp.workdps(50):
        assert abs(lambda_fn(1) - pi / 6) < 1e-40
        assert abs(lambda_fn(2) - pi**2 / 90) < 1e-40
        assert abs(lambda_fn(3) - pi**3 / 945 * 2) < 1e-40
        assert abs(lambda_fn(mpf(3) / 2) - zeta(3) / (2 * pi)) < 1e-40
    assert abs(lambda_fn(mpf(3) / 2) - mpf("0.191313298")) < 1e-9
    with pytest.raises(ValueError):
        lambda_fn(mpf(1) / 2)


@pytest.mark.parametrize("m, value", [(1, lambda: 2), (2, lambda: pi), (3, lambda: 4 * pi / 3)])
def test_unit_ball(m, value):
    with mp.workdps(50):
        assert abs(unit_ball_volume(m) - value()) < 1e-40


@pytest.mark.parametrize("n, value", [(1, lambda: 2), (2, lambda: 4 * pi), (3, lambda: 16 * pi**2)])
def test_orthogonal_group(n, value):
    with mp.workdps(50):
        assert abs(orthogonal_group_volume(n) - value()) < 1e-40


def test_split_constant(golden):
    K = assemble_constant(compute_invariants_quadratic(golden), local_profiles(golden, split_algebra(2)), 2)
    assert K.exponent == 1
    assert abs(K.C - C_SPLIT) < 1e-10
    with mp.workdps(50):
        direct = 4 * mp.log((1 + sqrt(5)) / 2) * 2 / (2 * sqrt(5) * pi / 6)
        assert abs(K.C - direct) < 1e-40
    assert K.covolume == 1 and K.C_covolume == K.C


def test_quaternion_constant(golden, quat_spec):
    K = assemble_constant(compute_invariants_quadratic(golden), local_profiles(golden, quat_spec), 2)
    assert K.corrections == {2: F(4), 3: F(3)}
    assert abs(K.C - 12 * C_SPLIT) < 1e-9
    assert K.covolume == 6
    assert abs(K.C_covolume - 2 * C_SPLIT) < 1e-9


def test_constant_is_multiplicative_and_linear():
    inv = FieldInvariants(2, 0, 2, 5, 1, mpf("0.4812118250596034474977589"))
    prof = lambda c: LocalProfile(2, ((1, 2),), True, 2, F(c))
    base = assemble_constant(inv, [prof(4)], 2).C
    assert abs(assemble_constant(inv, [prof(8)], 2).C / base - 2) < 1e-30
    bigger = FieldInvariants(2, 0, 2, 5, 3, inv.R * 5)
    assert abs(assemble_constant(bigger, [prof(4)], 2).C / base - 15) < 1e-30


def test_cubic_constant_exponent():
    inv = FieldInvariants(1, 1, 2, -108, 1, mpf("0.79666421882"))
    K = assemble_constant(inv, local_profiles(poly(-2, 0, 0, 1), split_algebra(3)), 3)
    assert K.exponent == 3
    assert K.C > 0
    assert all(v > 0 for k, v in K.breakdown() if k != "exponent")


def test_infeasible_constant():
    p = poly(-4, -1, 1)
    spec = AlgebraSpec(2, "quaternion", -1, 3, HURWITZ_LIKE)
    with pytest.raises(InfeasibleError) as exc:
        assemble_constant(compute_invariants_quadratic(p), local_profiles(p, spec), 2)
    assert exc.value.prime == 2 and exc.value.exit_code == 4
