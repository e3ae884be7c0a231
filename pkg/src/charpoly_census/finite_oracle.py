"""Brute-force orbit counts on finite quotients Z/q^k.

Two carriers: matrices over Z/q^k under GL_n conjugation, and the maximal
order of the local quaternion division algebra, realised as pairs (u, v)
over W = Z[y]/(y^2 - r) (the unramified quadratic ring) with

    (u, v)  <->  [[u, q*sigma(v)], [v, sigma(u)]],   pi = (0, 1),  pi^2 = q.

A residue class mod q^k need not lift to a q-adic point.  With ``lift=j``
only the reductions of solutions mod q^(k+j) are kept; the default
j = v_q(disc p) removes the spurious classes seen at small k.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

import numpy as np

from .errors import GuardError
from .poly import MonicIntPolynomial, discriminant, is_prime, valuation

GUARD = 10**8


def default_lift(p, q):
    d = discriminant(p)
    return valuation(d, q) if d % q == 0 else 0


def _orbits(elements, act, generators):
    """Orbit count of ``elements`` under the group generated by ``generators``."""
    remaining = set(elements)
    universe = set(elements)
    sizes = []
    while remaining:
        start = remaining.pop()
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = act(g, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        assert seen <= universe, "orbit left the fiber"
        remaining -= seen
        sizes.append(len(seen))
    return sizes


# --- matrix rings -------------------------------------------------------------


def _mat_mul(A, B, n, m):
    return tuple(
        sum(A[i * n + l] * B[l * n + j] for l in range(n)) % m for i in range(n) for j in range(n)
    )


def _mat_inv2(A, m):
    a, b, c, d = A
    det_inv = pow((a * d - b * c) % m, -1, m)
    return tuple(x * det_inv % m for x in (d, -b, -c, a))


def _charpoly_mod(A, n, m):
    from .census import charpoly_int

    M = [list(A[i * n : (i + 1) * n]) for i in range(n)]
    return [c % m for c in charpoly_int(M)]


def _matrix_fiber(p, n, modulus):
    coeffs = [c % modulus for c in p.coeffs]
    if n == 2:
        if modulus**3 > GUARD:
            raise GuardError(f"{modulus}^3 candidate matrices exceed the guard")
        t = (-p.coeffs[1]) % modulus
        r = np.arange(modulus, dtype=np.int64)
        a, b, c = np.meshgrid(r, r, r, indexing="ij")
        d = (t - a) % modulus
        ok = (a * d - b * c - p.coeffs[0]) % modulus == 0
        return [tuple(map(int, row)) for row in zip(a[ok], b[ok], c[ok], d[ok])]
    if modulus ** (n * n) > GUARD:
        raise GuardError(f"{modulus}^{n * n} candidate matrices exceed the guard")
    out = []
    for A in itertools.product(range(modulus), repeat=n * n):
        if _charpoly_mod(A, n, modulus) == coeffs:
            out.append(A)
    return out


def _gl_generators(n, m, q, strategy, seed=0):
    """Pairs (g, g^-1) generating GL_n(Z/m)."""
    ident = [int(i == j) for i in range(n) for j in range(n)]
    gens = []
    if strategy == "structured":
        for i in range(n):
            for j in range(n):
                if i != j:
                    g = list(ident)
                    g[i * n + j] = 1
                    gi = list(ident)
                    gi[i * n + j] = m - 1
                    gens.append((tuple(g), tuple(gi)))
        for u in range(2, m):
            if u % q:
                g = list(ident)
                g[0] = u
                gi = list(ident)
                gi[0] = pow(u, -1, m)
                gens.append((tuple(g), tuple(gi)))
        return gens
    if strategy == "sampled":
        if n != 2:
            raise ValueError("sampled generators are implemented for n = 2")
        rng = random.Random(seed + 7919 * m)
        while len(gens) < 8:
            g = tuple(rng.randrange(m) for _ in range(4))
            if (g[0] * g[3] - g[1] * g[2]) % q:
                gens.append((g, _mat_inv2(g, m)))
        return gens
    raise ValueError(f"unknown strategy {strategy!r}")


def matrix_conjugacy_census_mod(p: MonicIntPolynomial, n, q, k, lift=None, strategy="structured"):
    """(element count, GL_n(Z/q^k)-orbit count) of matrices with charpoly p mod q^k."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if p.degree != n:
        raise ValueError("degree mismatch")
    lift = default_lift(p, q) if lift is None else lift
    m = q**k
    fiber = _matrix_fiber(p, n, q ** (k + lift))
    elements = sorted({tuple(x % m for x in A) for A in fiber})
    coeffs = [c % m for c in p.coeffs]
    for A in elements:
        assert _charpoly_mod(A, n, m) == coeffs
    gens = _gl_generators(n, m, q, strategy)

    def act(g, x):
        return _mat_mul(_mat_mul(g[0], x, n, m), g[1], n, m)

    return len(elements), len(_orbits(elements, act, gens))


# --- the division model -------------------------------------------------------


def least_nonresidue(q):
    for r in range(2, q):
        if pow(r, (q - 1) // 2, q) == q - 1:
            return r
    raise ValueError("q must be an odd prime")


class DivisionModel:
    """Maximal order of the quaternion division algebra over Q_q, mod q^k."""

    def __init__(self, q, k):
        if q == 2 or not is_prime(q):
            raise ValueError("the division model needs an odd prime")
        self.q, self.k = q, k
        self.m = q**k
        self.r = least_nonresidue(q)

    # W = Z[y]/(y^2 - r) mod q^k, elements (x0, x1)
    def wmul(self, a, b):
        m, r = self.m, self.r
        return ((a[0] * b[0] + r * a[1] * b[1]) % m, (a[0] * b[1] + a[1] * b[0]) % m)

    def wadd(self, a, b):
        return ((a[0] + b[0]) % self.m, (a[1] + b[1]) % self.m)

    def sigma(self, a):
        return (a[0] % self.m, -a[1] % self.m)

    def wnorm(self, a):
        return (a[0] * a[0] - self.r * a[1] * a[1]) % self.m

    def mul(self, x, y):
        u1, v1 = (x[0], x[1]), (x[2], x[3])
        u2, v2 = (y[0], y[1]), (y[2], y[3])
        qv = self.wmul(self.sigma(v1), v2)
        u = self.wadd(self.wmul(u1, u2), (self.q * qv[0], self.q * qv[1]))
        v = self.wadd(self.wmul(v1, u2), self.wmul(self.sigma(u1), v2))
        return (u[0], u[1], v[0], v[1])

    @property
    def one(self):
        return (1, 0, 0, 0)

    @property
    def pi(self):
        return (0, 0, 1, 0)

    def trd(self, x):
        return 2 * x[0] % self.m

    def nrd(self, x):
        return (self.wnorm((x[0], x[1])) - self.q * self.wnorm((x[2], x[3]))) % self.m

    def matrix_charpoly(self, x):
        """(trace, det) of the 2x2 matrix over W; both must land in Z/q^k."""
        u, v = (x[0], x[1]), (x[2], x[3])
        su, sv = self.sigma(u), self.sigma(v)
        tr = self.wadd(u, su)
        qsv = (self.q * sv[0] % self.m, self.q * sv[1] % self.m)
        det = self.wadd(self.wmul(u, su), tuple(-c % self.m for c in self.wmul(qsv, v)))
        return tr, det

    def is_unit(self, x):
        return self.nrd(x) % self.q != 0

    def inverse(self, x):
        n_inv = pow(self.nrd(x), -1, self.m)
        # conjugate: (sigma(u), -v)
        c = (x[0], -x[1] % self.m, -x[2] % self.m, -x[3] % self.m)
        return tuple(v * n_inv % self.m for v in c)

    def units(self):
        m = self.m
        for x in itertools.product(range(m), repeat=4):
            if self.is_unit(x):
                yield x


def _division_fiber(p, q, modulus):
    """Model elements mod ``modulus`` with trd = -c1 and nrd = c0."""
    t, d = -p.coeffs[1], p.coeffs[0]
    if modulus**3 > GUARD:
        raise GuardError(f"{modulus}^3 candidates exceed the guard")
    u0 = t * pow(2, -1, modulus) % modulus
    r = least_nonresidue(q)
    rng = np.arange(modulus, dtype=np.int64)
    u1, v0, v1 = np.meshgrid(rng, rng, rng, indexing="ij")
    nrd = u0 * u0 - r * u1 * u1 - q * (v0 * v0 - r * v1 * v1)
    ok = (nrd - d) % modulus == 0
    return [(u0, int(a), int(b), int(c)) for a, b, c in zip(u1[ok], v0[ok], v1[ok])]


def _division_generators(model: DivisionModel, strategy, seed=0):
    m = model.m
    if strategy == "structured":
        # residue lifts of W^x, 1 + qW, and 1 + pi*w: every filtration step of the unit group
        q = model.q
        gens = [(a, b, 0, 0) for a in range(q) for b in range(q) if model.is_unit((a, b, 0, 0))]
        gens += [(1 + q, 0, 0, 0), (1, q, 0, 0)]
        gens += [(1, 0, a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
        gens = [tuple(c % m for c in g) for g in gens]
    elif strategy == "sampled":
        rng = random.Random(seed + 104729 * m)
        gens = []
        while len(gens) < 32:
            g = tuple(rng.randrange(m) for _ in range(4))
            if model.is_unit(g):
                gens.append(g)
    elif strategy == "sweep":
        if m**4 > 10**6:
            raise GuardError("full unit sweep only for small moduli")
        gens = list(model.units())
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return [(g, model.inverse(g)) for g in gens]


def division_orbit_census_mod(p: MonicIntPolynomial, q, k, lift=None, strategy="structured"):
    """Orbit count of the reduced-charpoly fiber under conjugation by model units."""
    if p.degree != 2:
        raise ValueError("the division model is quaternionic: degree 2 only")
    lift = default_lift(p, q) if lift is None else lift
    model = DivisionModel(q, k)
    m = model.m
    fiber = _division_fiber(p, q, q ** (k + lift))
    elements = sorted({tuple(c % m for c in x) for x in fiber})
    t, d = (-p.coeffs[1]) % m, p.coeffs[0] % m
    for x in elements:
        tr, det = model.matrix_charpoly(x)
        assert tr == (t, 0) and det == (d, 0), "model charpoly mismatch"
    gens = _division_generators(model, strategy)

    if strategy == "sweep":
        # orbit of x is {g x g^-1 : g unit}; no closure needed
        remaining = set(elements)
        count = 0
        while remaining:
            x = remaining.pop()
            remaining -= {model.mul(model.mul(g, x), gi) for g, gi in gens}
            count += 1
        return count

    def act(g, x):
        return model.mul(model.mul(g[0], x), g[1])

    return len(_orbits(elements, act, gens))
