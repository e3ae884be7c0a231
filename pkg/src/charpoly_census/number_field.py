"""Invariants of K = Q[x]/(p(x)) and the residue of its Dedekind zeta function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from mpmath import mp, mpf, log, pi, sqrt

from . import quadforms as qf
from .errors import FixtureError, HypothesisError, UnsupportedDegreeError
from .poly import (
    MonicIntPolynomial,
    discriminant,
    is_irreducible_over_Q,
    is_maximal,
    real_root_count,
)

DPS = 50


@dataclass(frozen=True)
class FieldInvariants:
    r1: int
    r2: int
    w: int
    d: int
    h: int
    R: mpf
    provenance: str = "computed"

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise FixtureError("r1, r2 must be nonnegative")
        if self.h < 1:
            raise FixtureError("h must be a positive integer")
        if self.r1 > 0 and self.w != 2:
            raise FixtureError("w must be 2 when r1>0")
        if self.w < 2 or self.w % 2:
            raise FixtureError("w must be an even integer >= 2")
        if not self.R > 0:
            raise FixtureError("R must be positive")
        if self.r1 + self.r2 == 1 and self.R != 1:
            raise FixtureError("R must be 1 when r1 + r2 = 1")

    @property
    def degree(self):
        return self.r1 + 2 * self.r2

    def as_dict(self):
        return {
            "r1": self.r1,
            "r2": self.r2,
            "w": self.w,
            "d": self.d,
            "h": self.h,
            "R": mp.nstr(self.R, 15),
            "provenance": self.provenance,
        }


def fundamental_unit(D):
    """Fundamental unit of the real quadratic order of discriminant D.

    Returns (u, v) with eps = u + v*omega > 1, omega = (D%2 + sqrt D)/2,
    found as the first convergent u/v of -conj(omega) giving a unit.
    """
    if D <= 0 or isqrt(D) ** 2 == D:
        raise ValueError("D must be a positive non-square")
    dm = D % 2
    trace_w = dm
    norm_w = (dm - D) // 4
    s = isqrt(D)
    # -conj(omega) = (-dm + sqrt D)/2, expanded as (P + sqrt D)/Q
    P, Q = -dm, 2
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        a = (P + s) // Q if Q > 0 else -((P + s) // -Q) - 1
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        u, v = h, k
        if v >= 1 and u >= 0:
            nrm = u * u + u * v * trace_w + v * v * norm_w
            if nrm in (1, -1):
                return u, v
        P = a * Q - P
        Q = (D - P * P) // Q


def unit_norm(D, u, v):
    dm = D % 2
    return u * u + u * v * dm + v * v * ((dm - D) // 4)


def regulator(D):
    u, v = fundamental_unit(D)
    with mp.workdps(DPS):
        eps = u + v * (D % 2 + sqrt(mpf(D))) / 2
        return +log(eps)


def class_number_imaginary(D):
    """Count of reduced primitive positive definite forms of discriminant D."""
    return len(qf.reduced_definite_forms(D))


def class_number_real(D):
    return qf.class_number_by_ideals(D)


def _check_quadratic(p: MonicIntPolynomial):
    if p.degree != 2:
        raise UnsupportedDegreeError(
            f"degree {p.degree} invariants are not computed; supply field_invariants"
        )
    if not is_irreducible_over_Q(p):
        raise HypothesisError(f"{p} is reducible over Q", reason="reducible_polynomial")
    if not is_maximal(p):
        raise HypothesisError(
            f"Z[x]/({p}) is not integrally closed", reason="not_integrally_closed"
        )


def compute_invariants_quadratic(p: MonicIntPolynomial) -> FieldInvariants:
    _check_quadratic(p)
    D = discriminant(p)
    if D < 0:
        w = {-3: 6, -4: 4}.get(D, 2)
        with mp.workdps(DPS):
            return FieldInvariants(0, 1, w, D, class_number_imaginary(D), mpf(1))
    return FieldInvariants(2, 0, 2, D, class_number_real(D), regulator(D))


def _as_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise FixtureError(f"{name} must be an integer")
    return value


def load_invariants_fixture(record: dict, p: MonicIntPolynomial) -> FieldInvariants:
    """Validate a user-supplied invariants record against what can be recomputed."""
    if p.degree < 3:
        raise UnsupportedDegreeError("fixture path is for degree >= 3; quadratics are computed")
    try:
        r1 = _as_int(record["r1"], "r1")
        r2 = _as_int(record["r2"], "r2")
        w = _as_int(record["w"], "w")
        d = _as_int(record["d"], "d")
        h = _as_int(record["h"], "h")
        R_raw = record["R"]
    except KeyError as exc:
        raise FixtureError(f"field_invariants missing {exc.args[0]}") from None
    if r1 != real_root_count(p):
        raise FixtureError(f"r1 mismatch: fixture {r1}, Sturm count {real_root_count(p)}")
    if r1 + 2 * r2 != p.degree:
        raise FixtureError("r2 mismatch: r1 + 2*r2 must equal the degree")
    if r1 > 0 and w != 2:
        raise FixtureError("w must be 2 when r1>0")
    disc = discriminant(p)
    if d != disc:
        raise FixtureError(f"d mismatch: fixture {d}, disc(p) = {disc}")
    with mp.workdps(DPS):
        R = mpf(str(R_raw)) if not isinstance(R_raw, Fraction) else mpf(R_raw.numerator) / R_raw.denominator
    return FieldInvariants(r1, r2, w, d, h, R, provenance="fixture")


def zeta_residue(inv: FieldInvariants) -> mpf:
    """2^r1 (2 pi)^r2 h R / (w sqrt|d|)."""
    with mp.workdps(DPS):
        return +(
            mpf(2) ** inv.r1 * (2 * pi) ** inv.r2 * inv.h * inv.R
            / (inv.w * sqrt(mpf(abs(inv.d))))
        )
