"""Rational quaternion algebras (a, b) and their orders.

Elements are written in the standard coordinates (1, i, j, ij) with
i^2 = a, j^2 = b, ij = -ji.  Order elements are integer coordinate
vectors with respect to a fixed order basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from mpmath import mp, mpf, matrix as mpmatrix, det as mpdet, sqrt as mpsqrt

from .errors import HypothesisError, OrderError, SpecError
from .poly import MonicIntPolynomial, prime_divisors, valuation

INF = math.inf
EMBED_DPS = 50


# --- Hilbert symbols --------------------------------------------------------


def _legendre(u, q):
    r = pow(u % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


def hilbert_symbol(a: int, b: int, q) -> int:
    """Hilbert symbol (a, b)_q for q a prime or INF."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if q == INF:
        return -1 if a < 0 and b < 0 else 1
    alpha, beta = valuation(a, q), valuation(b, q)
    u, v = a // q**alpha, b // q**beta
    if q == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = (eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2
        return -1 if e else 1
    sign = (-1) ** ((alpha * beta * ((q - 1) // 2)) % 2)
    return sign * _legendre(u, q) ** beta * _legendre(v, q) ** alpha


def ramified_set(a: int, b: int) -> list:
    """Finite primes where (a, b) is a division algebra; requires (a,b)_inf = +1."""
    if hilbert_symbol(a, b, INF) == -1:
        raise HypothesisError(
            f"({a},{b}) is definite: ramified at the real place", reason="definite_algebra"
        )
    S = sorted(q for q in set(prime_divisors(2 * a * b)) if hilbert_symbol(a, b, q) == -1)
    assert len(S) % 2 == 0, "ramified set must have even cardinality"
    return S


# --- arithmetic -------------------------------------------------------------


def qmul(x, y, a, b):
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def trd(y):
    return 2 * y[0]


def nrd(y, a, b):
    return y[0] ** 2 - a * y[1] ** 2 - b * y[2] ** 2 + a * b * y[3] ** 2


def conj(y):
    return (y[0], -y[1], -y[2], -y[3])


def _solve(rows, rhs):
    """Solve M x = rhs over Q for square M given as list of rows (Fractions)."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _frac_det(rows):
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return d


@dataclass(frozen=True)
class AlgebraSpec:
    """Either M_n(Q) ("split") or a quaternion algebra (a, b) with an order basis."""

    degree: int
    kind: str = "split"
    a: int = 0
    b: int = 0
    order_basis: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("split", "quaternion"):
            raise SpecError(f"unknown algebra kind {self.kind!r}")
        if self.kind == "quaternion":
            if self.degree != 2:
                raise SpecError("quaternion algebras have degree 2")
            if self.a == 0 or self.b == 0:
                raise SpecError("quaternion structure constants must be nonzero")
            if len(self.order_basis) != 4 or any(len(v) != 4 for v in self.order_basis):
                raise SpecError("order_basis must be 4 vectors of 4 rationals")
            basis = tuple(tuple(Fraction(c) for c in v) for v in self.order_basis)
            object.__setattr__(self, "order_basis", basis)

    @property
    def is_quaternion(self):
        return self.kind == "quaternion"

    @property
    def ramified(self):
        if not self.is_quaternion:
            return []
        return ramified_set(self.a, self.b)

    def element(self, coords):
        """Standard coordinates of sum coords[k] * basis[k]."""
        return tuple(
            sum((Fraction(x) * v[m] for x, v in zip(coords, self.order_basis)), Fraction(0))
            for m in range(4)
        )

    def coordinates(self, y):
        """Order-basis coordinates of a standard-coordinate element (rational)."""
        cols = list(zip(*self.order_basis))
        return _solve(cols, y)

    def trace_vector(self):
        return [int(trd(v)) for v in self.order_basis]

    def norm_hessian(self):
        """Integer matrix M with nrd(x) = x^T M x / 2 in order coordinates."""
        a, b = self.a, self.b
        e = self.order_basis
        M = []
        for k in range(4):
            row = []
            for l in range(4):
                if k == l:
                    val = 2 * nrd(e[k], a, b)
                else:
                    # polarisation: trd(e_k conj(e_l))
                    val = trd(qmul(e[k], conj(e[l]), a, b))
                if val.denominator != 1:
                    raise OrderError("norm form is not integral on the order", reason="invalid_order")
                row.append(int(val))
            M.append(row)
        return M

    def with_basis(self, U):
        """Same order, basis replaced by rows of U times the current basis."""
        new = tuple(
            tuple(sum((Fraction(U[r][k]) * self.order_basis[k][m] for k in range(4)), Fraction(0)) for m in range(4))
            for r in range(4)
        )
        return AlgebraSpec(self.degree, self.kind, self.a, self.b, new)


def split_algebra(n):
    return AlgebraSpec(n, "split")


def verify_order(spec: AlgebraSpec) -> int:
    """Check the order basis spans a maximal order; return its reduced discriminant."""
    if not spec.is_quaternion:
        return 1
    a, b = spec.a, spec.b
    e = spec.order_basis
    S = ramified_set(a, b)
    if _frac_det(e) == 0:
        raise OrderError("order basis is linearly dependent")
    try:
        one = spec.coordinates((1, 0, 0, 0))
    except ZeroDivisionError:
        raise OrderError("order basis is singular") from None
    if any(c.denominator != 1 for c in one):
        raise OrderError("not a ring: 1 is not in the lattice")
    for k in range(4):
        for l in range(4):
            prod = spec.coordinates(qmul(e[k], e[l], a, b))
            if any(c.denominator != 1 for c in prod):
                raise OrderError(f"not a ring: product of basis vectors {k},{l} leaves the lattice")
    for v in e:
        if trd(v).denominator != 1 or nrd(v, a, b).denominator != 1:
            raise OrderError("not integral: basis element with non-integral trd/nrd")
    pairing = [[trd(qmul(e[k], e[l], a, b)) for l in range(4)] for k in range(4)]
    dsq = abs(_frac_det(pairing))
    if dsq.denominator != 1 or isqrt(int(dsq)) ** 2 != int(dsq):
        raise OrderError("reduced discriminant is not an integer")
    disc = isqrt(int(dsq))
    expected = math.prod(S)
    if disc != expected:
        raise OrderError(
            f"not maximal: reduced discriminant {disc} != product of ramified primes {expected}"
        )
    return disc


# --- real embedding and the Frobenius Gram form ------------------------------


def _embedding_surd(spec):
    """Images of 1, i, j, ij as 2x2 matrices with entries (r, s) = r + s*sqrt(c)."""
    a, b = spec.a, spec.b
    if a > 0:
        c = a
        I = [[(0, 1), (0, 0)], [(0, 0), (0, -1)]]
        J = [[(0, 0), (1, 0)], [(b, 0), (0, 0)]]
    elif b > 0:
        c = b
        J = [[(0, 1), (0, 0)], [(0, 0), (0, -1)]]
        I = [[(0, 0), (1, 0)], [(a, 0), (0, 0)]]
    else:
        raise HypothesisError(f"({a},{b}) is definite", reason="definite_algebra")
    one = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]]

    def smul(x, y):
        return (x[0] * y[0] + c * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def mmul(A, B):
        out = []
        for r in range(2):
            row = []
            for col in range(2):
                x = smul(A[r][0], B[0][col])
                y = smul(A[r][1], B[1][col])
                row.append((Fraction(x[0] + y[0]), Fraction(x[1] + y[1])))
            out.append(row)
        return out

    K = mmul(I, J)
    std = [one, I, J, K]
    images = []
    for v in spec.order_basis:
        img = [
            [
                (
                    sum((Fraction(v[m]) * std[m][r][s][0] for m in range(4)), Fraction(0)),
                    sum((Fraction(v[m]) * std[m][r][s][1] for m in range(4)), Fraction(0)),
                )
                for s in range(2)
            ]
            for r in range(2)
        ]
        images.append(img)
    return c, images


def real_embedding(spec: AlgebraSpec):
    """Images of the order basis in M_2(R), entries as mpf at 50 digits."""
    if not spec.is_quaternion:
        n = spec.degree
        return [
            [[mpf(1) if (r, s) == (k // n, k % n) else mpf(0) for s in range(n)] for r in range(n)]
            for k in range(n * n)
        ]
    c, images = _embedding_surd(spec)
    with mp.workdps(EMBED_DPS):
        root = mpsqrt(c)
        return [
            [[mpf(e[0].numerator) / e[0].denominator + root * mpf(e[1].numerator) / e[1].denominator for e in row] for row in img]
            for img in images
        ]


@dataclass(frozen=True)
class GramForm:
    """Frobenius Gram form G = rat + sqrt(c) * irr with exact rational parts."""

    rat: tuple
    irr: tuple
    c: int

    @property
    def size(self):
        return len(self.rat)

    def value(self, x):
        """(X, Y) with x^T G x = X + Y sqrt(c), exact."""
        n = self.size
        X = sum((self.rat[k][l] * x[k] * x[l] for k in range(n) for l in range(n)), Fraction(0))
        Y = sum((self.irr[k][l] * x[k] * x[l] for k in range(n) for l in range(n)), Fraction(0))
        return X, Y

    def to_float(self, dps=EMBED_DPS):
        with mp.workdps(dps):
            root = mpsqrt(self.c)
            return [
                [mpf(r.numerator) / r.denominator + root * mpf(s.numerator) / s.denominator for r, s in zip(rr, ir)]
                for rr, ir in zip(self.rat, self.irr)
            ]

    @property
    def is_rational(self):
        return all(v == 0 for row in self.irr for v in row)


def surd_le(X, Y, c, bound):
    """Exact test X + Y*sqrt(c) <= bound (rationals, c > 0)."""
    Z = Fraction(bound) - X
    if Y == 0:
        return Z >= 0
    if Y < 0:
        return Z >= 0 or c * Y * Y >= Z * Z
    return Z >= 0 and c * Y * Y <= Z * Z


def frobenius_gram(spec: AlgebraSpec) -> GramForm:
    if not spec.is_quaternion:
        n = spec.degree * spec.degree
        ident = tuple(tuple(Fraction(int(k == l)) for l in range(n)) for k in range(n))
        zero = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        return GramForm(ident, zero, 1)
    c, images = _embedding_surd(spec)
    root = isqrt(c)
    fold = root * root == c
    rat, irr = [], []
    for A in images:
        rrow, irow = [], []
        for B in images:
            X = Y = Fraction(0)
            for r in range(2):
                for s in range(2):
                    (p1, s1), (p2, s2) = A[r][s], B[r][s]
                    X += p1 * p2 + c * s1 * s2
                    Y += p1 * s2 + p2 * s1
            if fold:
                X, Y = X + root * Y, Fraction(0)
            rrow.append(X)
            irow.append(Y)
        rat.append(tuple(rrow))
        irr.append(tuple(irow))
    G = GramForm(tuple(rat), tuple(irr), 1 if fold else c)
    with mp.workdps(EMBED_DPS):
        M = mpmatrix(G.to_float())
        for k in range(1, 5):
            assert mpdet(M[0:k, 0:k]) > 0, "Frobenius Gram matrix is not positive definite"
    return G


def reduced_charpoly(spec: AlgebraSpec, coords) -> MonicIntPolynomial:
    """x^2 - trd(x) x + nrd(x) for the order element with the given coordinates."""
    y = spec.element(coords)
    t, n = trd(y), nrd(y, spec.a, spec.b)
    if t.denominator != 1 or n.denominator != 1:
        raise OrderError("element is not integral")
    return MonicIntPolynomial((int(n), -int(t), 1))
