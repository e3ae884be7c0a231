"""Exact arithmetic on monic integer polynomials.

Polynomials over Z/q are plain lists of residues in ascending order with no
trailing zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import SpecError

# exhaustive trial division when q * #(monic polys of degree <= n/2) is below this
EXHAUSTIVE_LIMIT = 10**6


@dataclass(frozen=True)
class MonicIntPolynomial:
    """Monic polynomial with integer coefficients, stored ascending."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in coeffs):
            raise SpecError("polynomial coefficients must be integers")
        if len(coeffs) < 3:
            raise SpecError("polynomial degree must be at least 2")
        if coeffs[-1] != 1:
            raise SpecError("polynomial must be monic (leading coefficient 1)")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> list:
        return [k * c for k, c in enumerate(self.coeffs)][1:]

    def mod(self, q) -> list:
        return _trim([c % q for c in self.coeffs])

    def reflected(self) -> "MonicIntPolynomial":
        """(-1)^n p(-x): the charpoly of -M when p is the charpoly of M."""
        n = self.degree
        return MonicIntPolynomial(
            tuple(c * (-1) ** (n - k) for k, c in enumerate(self.coeffs))
        )

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs, var="x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def is_prime(q) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    r = isqrt(q)
    f = 3
    while f <= r:
        if q % f == 0:
            return False
        f += 2
    return True


def primes_up_to(limit) -> list:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_divisors(m) -> list:
    m = abs(m)
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


def valuation(m, q) -> int:
    if m == 0:
        raise ValueError("valuation of zero")
    v = 0
    while m % q == 0:
        m //= q
        v += 1
    return v


# --- integer determinants / resultants -------------------------------------


def bareiss_det(rows) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f, g) -> int:
    """Res(f, g) via the Sylvester matrix; f, g ascending integer lists."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def discriminant(p: MonicIntPolynomial) -> int:
    n = p.degree
    return (-1) ** (n * (n - 1) // 2) * resultant(list(p.coeffs), p.derivative())


# --- polynomials over Z/q --------------------------------------------------


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f, g, q):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % q for i in range(n)])


def poly_sub(f, g, q):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % q for i in range(n)])


def poly_mul(f, g, q):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([c % q for c in out])


def poly_divmod(f, g, q):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, q)
    dg = len(g) - 1
    quo = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k] * inv % q
        if c:
            quo[k - dg] = c
            for j, b in enumerate(g):
                f[k - dg + j] = (f[k - dg + j] - c * b) % q
    return _trim(quo), _trim(f[:dg])


def poly_monic(f, q):
    if not f:
        return []
    inv = pow(f[-1], -1, q)
    return [c * inv % q for c in f]


def poly_gcd(f, g, q):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, poly_divmod(f, g, q)[1]
    return poly_monic(f, q)


def poly_powmod(base, e, mod, q):
    result = [1]
    base = poly_divmod(base, mod, q)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, q), mod, q)[1]
        base = poly_divmod(poly_mul(base, base, q), mod, q)[1]
        e >>= 1
    return result


def poly_pow(f, e, q):
    out = [1]
    for _ in range(e):
        out = poly_mul(out, f, q)
    return out


@dataclass(frozen=True)
class FactorizationModQ:
    """Complete factorization of a monic polynomial over Z/q."""

    q: int
    factors: tuple  # ((coeff tuple, multiplicity), ...), sorted

    @property
    def degrees(self):
        return [len(g) - 1 for g, _ in self.factors]

    @property
    def multiplicities(self):
        return [e for _, e in self.factors]

    def product(self):
        out = [1]
        for g, e in self.factors:
            out = poly_mul(out, poly_pow(list(g), e, self.q), self.q)
        return out

    def __str__(self):
        parts = []
        for g, e in self.factors:
            s = f"({format_poly(g)})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return " * ".join(parts)


def _monic_polys(d, q):
    for tail in itertools.product(range(q), repeat=d):
        yield list(tail) + [1]


def _factor_exhaustive(f, q):
    factors = []
    d = 1
    while 2 * d <= len(f) - 1:
        for g in _monic_polys(d, q):
            e = 0
            while True:
                quo, rem = poly_divmod(f, g, q)
                if rem:
                    break
                f = quo
                e += 1
            if e:
                factors.append((tuple(g), e))
            if 2 * d > len(f) - 1:
                break
        d += 1
    if len(f) > 1:
        factors.append((tuple(f), 1))
    return factors


def _derivative_mod(f, q):
    return _trim([(k * c) % q for k, c in enumerate(f)][1:])


def _squarefree_decomposition(f, q):
    """Return [(g, e)] with f = prod g^e, each g squarefree (Yun, char q)."""
    out = []
    if len(f) <= 1:
        return out
    df = _derivative_mod(f, q)
    if not df:
        # f = h(x^q)
        h = [f[i] for i in range(0, len(f), q)]
        return [(g, e * q) for g, e in _squarefree_decomposition(h, q)]
    c = poly_gcd(f, df, q)
    w = poly_divmod(f, c, q)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(w, c, q)
        z = poly_divmod(w, y, q)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = poly_divmod(c, y, q)[0]
    if len(c) > 1:
        # remaining part is a q-th power
        h = [c[i] for i in range(0, len(c), q)]
        out.extend((g, e * q) for g, e in _squarefree_decomposition(h, q))
    return out


def _distinct_degree(f, q):
    out = []
    h = [0, 1]
    d = 0
    x = [0, 1]
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, q, f, q)
        g = poly_gcd(f, poly_sub(h, x, q), q)
        if len(g) > 1:
            out.append((g, d))
            f = poly_divmod(f, g, q)[0]
            h = poly_divmod(h, f, q)[1] if len(f) > 1 else h
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, q, rng):
    if len(f) - 1 == d:
        return [f]
    n = len(f) - 1
    while True:
        a = _trim([rng.randrange(q) for _ in range(n)])
        if len(a) <= 1:
            continue
        if q == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a
            cur = a
            for _ in range(d - 1):
                cur = poly_divmod(poly_mul(cur, cur, q), f, q)[1]
                t = poly_add(t, cur, q)
            b = t
        else:
            b = poly_sub(poly_powmod(a, (q**d - 1) // 2, f, q), [1], q)
        g = poly_gcd(f, b, q)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, q, rng) + _equal_degree(poly_divmod(f, g, q)[0], d, q, rng)


def _factor_fast(f, q):
    rng = random.Random(q * 1000003 + len(f))
    factors = {}
    for g, e in _squarefree_decomposition(f, q):
        for h, d in _distinct_degree(g, q):
            for piece in _equal_degree(h, d, q, rng):
                key = tuple(poly_monic(piece, q))
                factors[key] = factors.get(key, 0) + e
    return list(factors.items())


def _exhaustive_cost(n, q):
    return q * sum(q**d for d in range(1, n // 2 + 1))


def factor_mod_q(p: MonicIntPolynomial, q: int, method: str = "auto") -> FactorizationModQ:
    """Factor p over Z/q into monic irreducibles with multiplicities.

    ``method`` is ``"auto"``, ``"exhaustive"`` or ``"fast"`` (squarefree,
    distinct-degree and equal-degree splitting).
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    f = p.mod(q)
    if method == "auto":
        method = "exhaustive" if _exhaustive_cost(p.degree, q) < EXHAUSTIVE_LIMIT else "fast"
    if method == "exhaustive":
        raw = _factor_exhaustive(f, q)
    elif method == "fast":
        raw = _factor_fast(f, q)
    else:
        raise ValueError(f"unknown method {method!r}")
    fac = FactorizationModQ(q, tuple(sorted(raw, key=lambda t: (len(t[0]), t[0]))))
    assert fac.product() == f, "factorization does not reproduce p mod q"
    assert sum(e * (len(g) - 1) for g, e in fac.factors) == p.degree
    return fac


def dedekind_maximality_test(p: MonicIntPolynomial, q: int) -> bool:
    """True iff Z[x]/(p) is maximal at q (Dedekind's criterion)."""
    fac = factor_mod_q(p, q)
    if all(e == 1 for e in fac.multiplicities):
        return True
    lifted = [1]
    for g, e in fac.factors:
        for _ in range(e):
            lifted = _int_mul(lifted, list(g))
    diff = [a - b for a, b in itertools.zip_longest(p.coeffs, lifted, fillvalue=0)]
    assert all(c % q == 0 for c in diff)
    F = _trim([(c // q) % q for c in diff])
    for g, e in fac.factors:
        if e >= 2 and not poly_divmod(F, list(g), q)[1]:
            return False
    return True


def _int_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def is_maximal(p: MonicIntPolynomial) -> bool:
    d = discriminant(p)
    return all(dedekind_maximality_test(p, q) for q in prime_divisors(d) if d % (q * q) == 0)


def is_irreducible_over_Q(p: MonicIntPolynomial, certificate=None) -> bool:
    """Irreducibility over Q.

    Degrees 2 and 3 are decided by the rational root test.  For higher
    degree a witness prime ``certificate`` (p irreducible mod it) must be
    supplied; it is checked, and ``False`` is returned if it does not
    certify.
    """
    n = p.degree
    if n <= 3:
        c0 = p.coeffs[0]
        if c0 == 0:
            return False
        for dv in _divisors(abs(c0)):
            if p(dv) == 0 or p(-dv) == 0:
                return False
        return True
    if certificate is None:
        raise SpecError("irreducibility certificate (witness prime) required for degree >= 4")
    fac = factor_mod_q(p, certificate)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def _divisors(m):
    small, large = [], []
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
    return small + large[::-1]


# --- Sturm sequences ------------------------------------------------------


def _frac_divmod(f, g):
    f = list(f)
    dg = len(g) - 1
    quo = [Fraction(0)] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k] / g[-1]
        quo[k - dg] = c
        for j, b in enumerate(g):
            f[k - dg + j] -= c * b
    rem = f[:dg]
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def sturm_sequence(coeffs):
    f0 = [Fraction(c) for c in coeffs]
    f1 = [k * c for k, c in enumerate(f0)][1:]
    seq = [f0, f1]
    while len(seq[-1]) > 1:
        _, rem = _frac_divmod(seq[-2], seq[-1])
        if not rem:
            break
        seq.append([-c for c in rem])
    return seq


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_count(p: MonicIntPolynomial) -> int:
    """Number of distinct real roots, from the Sturm chain at +-infinity."""
    seq = sturm_sequence(p.coeffs)
    at_pos = [(1 if f[-1] > 0 else -1) for f in seq]
    at_neg = [(1 if f[-1] > 0 else -1) * (-1) ** (len(f) - 1) for f in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)
