"""Special functions and the leading constant of the counting asymptotic."""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import bernoulli, factorial, gamma, mp, mpf, pi

from .errors import InfeasibleError
from .number_field import FieldInvariants, zeta_residue

DPS = 50
_EM_TERMS = 30
_EM_CUTOFF = 40


def zeta(s):
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation."""
    with mp.workdps(DPS + 10):
        s = mpf(s)
        if s <= 1:
            raise ValueError("zeta is only summed for s > 1")
        N = _EM_CUTOFF
        total = sum(mpf(k) ** (-s) for k in range(1, N))
        total += mpf(N) ** (1 - s) / (s - 1) + mpf(N) ** (-s) / 2
        rising = s  # s (s+1) ... (s + 2j - 2)
        for j in range(1, _EM_TERMS + 1):
            total += bernoulli(2 * j) / factorial(2 * j) * rising * mpf(N) ** (-s - 2 * j + 1)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
    with mp.workdps(DPS):
        return +total


def lambda_fn(s):
    """pi^-s Gamma(s) zeta(2s)."""
    with mp.workdps(DPS):
        s = mpf(s)
        if s <= mpf(1) / 2:
            raise ValueError("lambda_fn needs s > 1/2")
        return pi ** (-s) * gamma(s) * zeta(2 * s)


def unit_ball_volume(m):
    if m < 1:
        raise ValueError("dimension must be positive")
    with mp.workdps(DPS):
        return pi ** (mpf(m) / 2) / gamma(mpf(m) / 2 + 1)


def orthogonal_group_volume(n):
    """2^n pi^(n(n+1)/4) / prod_{i<=n} Gamma(i/2); cancels out of the constant."""
    with mp.workdps(DPS):
        out = mpf(2) ** n * pi ** (mpf(n * (n + 1)) / 4)
        for i in range(1, n + 1):
            out /= gamma(mpf(i) / 2)
        return out


@dataclass(frozen=True)
class AsymptoticConstant:
    C: mpf
    exponent: int
    corrections: dict = field(default_factory=dict)  # q -> Fraction
    zeta_residue: mpf = None
    ball_volume: mpf = None
    lambda_product: mpf = None
    covolume: int = 1  # covolume of the order inside M_n(R), Frobenius measure

    @property
    def C_covolume(self):
        """C divided by the covolume of the order; the constant in order coordinates."""
        with mp.workdps(DPS):
            return self.C / self.covolume

    def breakdown(self):
        rows = [("exponent", self.exponent)]
        for q, c in sorted(self.corrections.items()):
            rows.append((f"correction[q={q}]", c))
        rows += [
            ("zeta_residue", self.zeta_residue),
            ("unit_ball_volume", self.ball_volume),
            ("lambda_product", self.lambda_product),
            ("C", self.C),
        ]
        if self.covolume != 1:
            rows += [("order_covolume", self.covolume), ("C_covolume", self.C_covolume)]
        return rows


def assemble_constant(inv: FieldInvariants, profiles, n) -> AsymptoticConstant:
    m = n * (n - 1) // 2
    corrections = {}
    covolume = 1
    for prof in profiles:
        if not prof.is_division_prime:
            continue
        if not prof.feasible:
            raise InfeasibleError(
                f"p is reducible over Q_{prof.q} but {prof.q} is a division prime", prime=prof.q
            )
        corrections[prof.q] = prof.correction_factor
        covolume *= prof.q ** m
    with mp.workdps(DPS):
        res = zeta_residue(inv)
        omega = unit_ball_volume(m)
        lam = mpf(1)
        for i in range(2, n + 1):
            lam *= lambda_fn(mpf(i) / 2)
        C = res * omega / lam
        for c in corrections.values():
            C *= mpf(c.numerator) / c.denominator
        return AsymptoticConstant(+C, m, corrections, res, omega, lam, covolume)
