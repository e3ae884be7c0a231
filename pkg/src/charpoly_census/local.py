"""Per-prime data: splitting of q in K, feasibility, orbit counts and densities.

Everything is read off the factorization of p mod q, which is faithful
because Z[x]/(p) is assumed (and checked) to be maximal at q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import HypothesisError
from .poly import (
    MonicIntPolynomial,
    dedekind_maximality_test,
    discriminant,
    factor_mod_q,
    prime_divisors,
    primes_up_to,
)


@dataclass(frozen=True)
class LocalProfile:
    q: int
    pairs: tuple  # ((e_i, f_i), ...)
    is_division_prime: bool
    orbit_count: int | None = None
    correction_factor: Fraction | None = None
    split_density: Fraction | None = None

    @property
    def irreducible_over_Qq(self):
        return len(self.pairs) == 1

    @property
    def feasible(self):
        return self.irreducible_over_Qq or not self.is_division_prime

    @property
    def e(self):
        return self.pairs[0][0] if self.irreducible_over_Qq else None

    def describe(self):
        ef = " ".join(f"(e={e},f={f})" for e, f in self.pairs)
        head = f"q={self.q} {'division' if self.is_division_prime else 'split'} {ef}"
        if self.is_division_prime:
            if not self.feasible:
                return f"{head} feasible=no"
            return (
                f"{head} feasible=yes orbits={self.orbit_count} "
                f"correction={float(self.correction_factor):.6g}"
            )
        return f"{head} feasible=yes density={float(self.split_density):.6g}"


def ramification_data(p: MonicIntPolynomial, q: int) -> list:
    """[(e_i, f_i)] for the primes of K above q."""
    if not dedekind_maximality_test(p, q):
        raise HypothesisError(
            f"Z[x]/({p}) is not integrally closed at {q}", reason="not_integrally_closed"
        )
    fac = factor_mod_q(p, q)
    return [(e, len(g) - 1) for g, e in fac.factors]


def local_feasibility(p, spec, q) -> bool:
    if q in spec.ramified:
        return len(ramification_data(p, q)) == 1
    return True


def division_orbit_count(n, e):
    assert n % e == 0, "ramification index must divide the degree"
    return n // e


def division_correction_factor(n, q, e) -> Fraction:
    """n / (e * prod_{i=1}^{n-1} (1 - q^-i))."""
    den = Fraction(e)
    for i in range(1, n):
        den *= 1 - Fraction(1, q**i)
    return Fraction(n) / den


def sl_local_measure(q, n) -> Fraction:
    out = Fraction(1)
    for i in range(2, n + 1):
        out *= 1 - Fraction(1, q**i)
    return out


def sl_measure_product(n, Q):
    """Partial product over primes q <= Q of sl_local_measure(q, n)."""
    with mp.workdps(30):
        out = mpf(1)
        for q in primes_up_to(Q):
            for i in range(2, n + 1):
                out *= 1 - mpf(q) ** (-i)
        return out


def euler_factor_ratio(pairs, q) -> Fraction:
    """q-Euler factor of zeta_K(s)/zeta(s) at s = 1."""
    den = Fraction(1)
    for _, f in pairs:
        den *= 1 - Fraction(1, q**f)
    return (1 - Fraction(1, q)) / den


def split_local_density(p, q, n=None) -> Fraction:
    n = p.degree if n is None else n
    return euler_factor_ratio(ramification_data(p, q), q) * sl_local_measure(q, n)


def partial_euler_product(p: MonicIntPolynomial, Q: int):
    """prod_{q <= Q} of the Euler factors of zeta_K/zeta at s = 1."""
    d = discriminant(p)
    with mp.workdps(30):
        out = mpf(1)
        for q in primes_up_to(Q):
            if d % q:
                pairs = [(e, len(g) - 1) for g, e in factor_mod_q(p, q).factors]
            else:
                pairs = ramification_data(p, q)
            r = euler_factor_ratio(pairs, q)
            out *= mpf(r.numerator) / r.denominator
        return out


def local_profile(p: MonicIntPolynomial, spec, q: int) -> LocalProfile:
    n = p.degree
    pairs = tuple(ramification_data(p, q))
    if q in spec.ramified:
        if len(pairs) != 1:
            return LocalProfile(q, pairs, True)
        e = pairs[0][0]
        return LocalProfile(
            q,
            pairs,
            True,
            orbit_count=division_orbit_count(n, e),
            correction_factor=division_correction_factor(n, q, e),
        )
    return LocalProfile(
        q, pairs, False, split_density=euler_factor_ratio(pairs, q) * sl_local_measure(q, n)
    )


def relevant_primes(p, spec) -> list:
    return sorted(set(prime_divisors(discriminant(p))) | set(spec.ramified))


def local_profiles(p, spec) -> list:
    return [local_profile(p, spec, q) for q in relevant_primes(p, spec)]
