"""Exact censuses N(T) of integral elements with a prescribed characteristic
polynomial and Frobenius norm at most T.

Each engine runs once at the largest T and records the exact squared norm
of every solution, so a whole grid of smaller T is counted from one pass.
Work is split over the outermost coordinate; partial results are merged
by sorting, which makes the output independent of the worker count.
"""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from .poly import MonicIntPolynomial, factor_mod_q, is_irreducible_over_Q
from .quaternion import AlgebraSpec, frobenius_gram, surd_le, verify_order

# int64 products stay exact below this; larger problems use Python ints
_INT64_SAFE = 2**62
_NUMPY_MIN_SPAN = 48


def as_fraction(T) -> Fraction:
    if isinstance(T, Fraction):
        return T
    if isinstance(T, str):
        return Fraction(T)
    return Fraction(T)


@dataclass
class NormSet:
    """Exact squared norms of all solutions found, scaled by ``scale``.

    A key is an int X (norm^2 = X / scale) or, when the Gram form has an
    irrational part, a pair (X, Y) with norm^2 = (X + Y sqrt(c)) / scale.
    """

    keys: list
    scale: int = 1
    c: int = 1
    surd: bool = False

    def count(self, T) -> int:
        bound = as_fraction(T) ** 2 * self.scale
        if not self.surd:
            return bisect.bisect_right(self.keys, math.floor(bound))
        return sum(1 for X, Y in self.keys if surd_le(X, Y, self.c, bound))

    def __len__(self):
        return len(self.keys)


@dataclass
class CensusSeries:
    grid: list
    counts: list
    mode: str
    infeasible_prime: int | None = None
    norms: NormSet | None = field(default=None, repr=False)

    def __post_init__(self):
        assert all(a < b for a, b in zip(self.grid, self.grid[1:])), "grid must increase"
        assert all(a <= b for a, b in zip(self.counts, self.counts[1:])), "counts must not decrease"


def geometric_grid(T_max, points=6) -> list:
    T_max = as_fraction(T_max)
    return [T_max / 2**k for k in range(points - 1, -1, -1)]


def _run_chunks(worker, args_list, threads):
    if threads <= 1 or len(args_list) <= 1:
        return [worker(*args) for args in args_list]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, *zip(*args_list)))


def _split_range(lo, hi, parts):
    """Split [lo, hi] into at most ``parts`` contiguous integer chunks."""
    if hi < lo:
        return []
    parts = max(1, min(parts, hi - lo + 1))
    size = (hi - lo + 1 + parts - 1) // parts
    return [(s, min(s + size - 1, hi)) for s in range(lo, hi + 1, size)]


def _chunk_count(threads):
    # a few chunks per worker for load balance; 1 when single-threaded
    return 1 if threads <= 1 else 4 * threads


# --- split case, n = 2 ------------------------------------------------------


def _divisors_between(M, lo, hi):
    """Divisors u of M with lo <= u <= hi."""
    lo = max(lo, 1)
    if hi < lo:
        return []
    if hi - lo < _NUMPY_MIN_SPAN or M >= _INT64_SAFE:
        return [u for u in range(lo, hi + 1) if M % u == 0]
    us = np.arange(lo, hi + 1, dtype=np.int64)
    return [int(u) for u in us[(M % us) == 0]]


def _n2_worker(t, d, a_lo, a_hi, bound):
    keys = []
    for a in range(a_lo, a_hi + 1):
        base = a * a + (t - a) * (t - a)
        R = bound - base
        if R < 0:
            continue
        m = a * (t - a) - d
        assert m != 0, "integer eigenvalue: polynomial is reducible"
        M = abs(m)
        if R < 2 * M:
            continue
        # u^2 + (M/u)^2 <= R  with  u <= sqrt(M)  iff  u^2 >= (R - sqrt(R^2 - 4M^2)) / 2
        disc = R * R - 4 * M * M
        low_sq = (R - isqrt(disc) - 1) // 2
        lo = max(isqrt(max(low_sq, 0)), 1)
        hi = isqrt(M)
        for u in _divisors_between(M, lo, hi):
            v = M // u
            if u * u + v * v > R:
                continue
            norm = base + u * u + v * v
            keys.extend([norm] * (4 if u != v else 2))
    return keys


def matrix_norms_n2(p: MonicIntPolynomial, T, threads=1) -> NormSet:
    if p.degree != 2:
        raise ValueError("matrix_norms_n2 needs a quadratic")
    t, d = -p.coeffs[1], p.coeffs[0]
    bound = math.floor(as_fraction(T) ** 2)
    # a^2 + (t-a)^2 <= bound
    r = isqrt(2 * bound) + 2
    a_lo, a_hi = (t - r) // 2 - 1, (t + r) // 2 + 1
    chunks = _split_range(a_lo, a_hi, _chunk_count(threads))
    parts = _run_chunks(_n2_worker, [(t, d, lo, hi, bound) for lo, hi in chunks], threads)
    return NormSet(sorted(k for part in parts for k in part))


def matrix_solutions_n2(p: MonicIntPolynomial, T) -> list:
    """The solution matrices themselves, as (a, b, c, d) tuples, sorted."""
    t, d = -p.coeffs[1], p.coeffs[0]
    bound = math.floor(as_fraction(T) ** 2)
    r = isqrt(2 * bound) + 2
    out = []
    for a in range((t - r) // 2 - 1, (t + r) // 2 + 2):
        base = a * a + (t - a) * (t - a)
        if base > bound:
            continue
        m = a * (t - a) - d
        for u in _divisors_between(abs(m), 1, isqrt(bound - base)):
            v = abs(m) // u
            if base + u * u + v * v <= bound:
                s = 1 if m > 0 else -1
                out += [(a, u, s * v, t - a), (a, -u, -s * v, t - a)]
    return sorted(out)


def matrix_census_n2(p: MonicIntPolynomial, T, threads=1) -> int:
    """# of 2x2 integer matrices with charpoly p and Frobenius norm <= T."""
    return len(matrix_norms_n2(p, T, threads))


# --- split case, general n --------------------------------------------------


def int_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    from .poly import bareiss_det

    return bareiss_det(M)


def charpoly_int(M):
    """Ascending coefficients of det(xI - M) via Faddeev-LeVerrier (exact)."""
    n = len(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M @ (M_{k-1} + c_{n-k+1} I)
        if k == 1:
            prev = [[int(i == j) for j in range(n)] for i in range(n)]
        else:
            prev = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(Mk[i][i] for i in range(n))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return coeffs


def _generic_worker(coeffs, n, first_lo, first_hi, bound):
    t = -coeffs[n - 1]
    target_det = (-1) ** n * coeffs[0]
    diag = [(i, i) for i in range(n - 1)]
    off = [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) != (0, n - 1)]
    order = diag + off
    solve_pos = (0, n - 1)
    M = [[0] * n for _ in range(n)]
    keys = []

    def finish(used):
        # last free entry enters the determinant affinely
        M[0][n - 1] = 0
        D0 = int_det(M)
        M[0][n - 1] = 1
        slope = int_det(M) - D0
        room = bound - used
        lim = isqrt(room)
        if slope != 0:
            num = target_det - D0
            if num % slope:
                return
            cands = [num // slope]
        elif D0 == target_det:
            cands = range(-lim, lim + 1)
        else:
            return
        for x in cands:
            if x * x > room:
                continue
            M[0][n - 1] = x
            if charpoly_int(M) == list(coeffs):
                keys.append(used + x * x)

    def rec(k, used):
        if k == len(order):
            finish(used)
            return
        i, j = order[k]
        lim = isqrt(bound - used)
        if k == 0:
            rng = range(max(-lim, first_lo), min(lim, first_hi) + 1)
        else:
            rng = range(-lim, lim + 1)
        for x in rng:
            M[i][j] = x
            u = used + x * x
            if k == n - 2:
                last = t - sum(M[r][r] for r in range(n - 1))
                u += last * last
                if u > bound:
                    continue
                M[n - 1][n - 1] = last
            rec(k + 1, u)
        M[i][j] = 0

    if n == 1:
        return keys
    rec(0, 0)
    return keys


def matrix_norms_generic(p: MonicIntPolynomial, T, threads=1) -> NormSet:
    n = p.degree
    bound = math.floor(as_fraction(T) ** 2)
    lim = isqrt(bound)
    chunks = _split_range(-lim, lim, _chunk_count(threads))
    parts = _run_chunks(
        _generic_worker, [(tuple(p.coeffs), n, lo, hi, bound) for lo, hi in chunks], threads
    )
    return NormSet(sorted(k for part in parts for k in part))


def matrix_census_generic(p: MonicIntPolynomial, T, threads=1) -> int:
    """Branch-and-bound census for any n; exponential in n, meant for n <= 3."""
    return len(matrix_norms_generic(p, T, threads))


# --- quaternion orders ------------------------------------------------------


def _trace_adapted_basis(row):
    """Unimodular V (columns) with row . V = (g, 0, ..., 0), g > 0."""
    n = len(row)
    vec = list(row)
    V = [[int(i == j) for j in range(n)] for i in range(n)]  # V[i][j]: column j
    while sum(1 for v in vec if v) > 1:
        i = min((k for k in range(n) if vec[k]), key=lambda k: abs(vec[k]))
        for j in range(n):
            if j != i and vec[j]:
                k = vec[j] // vec[i]
                vec[j] -= k * vec[i]
                for r in range(n):
                    V[r][j] -= k * V[r][i]
    i = next(k for k in range(n) if vec[k])
    if i != 0:
        vec[0], vec[i] = vec[i], vec[0]
        for r in range(n):
            V[r][0], V[r][i] = V[r][i], V[r][0]
    if vec[0] < 0:
        vec[0] = -vec[0]
        for r in range(n):
            V[r][0] = -V[r][0]
    return vec[0], V


def _congruence(V, M):
    n = len(M)
    return [
        [sum(V[k][i] * M[k][l] * V[l][j] for k in range(n) for l in range(n)) for j in range(n)]
        for i in range(n)
    ]


@dataclass
class _QuaternionSetup:
    """Precomputed data for the quaternion census in trace-adapted coordinates."""

    V: list  # columns = new basis in order coordinates
    y0: int
    Mn: list  # Hessian of nrd in new coordinates
    two_d: int
    G_rat: list  # integer, scaled by ``scale``
    G_irr: list
    scale: int
    c: int
    surd: bool
    center: list
    A_inv: list
    m0: float


def _quaternion_setup(spec: AlgebraSpec, p: MonicIntPolynomial):
    tr = spec.trace_vector()
    M = spec.norm_hessian()
    t, d = -p.coeffs[1], p.coeffs[0]
    g, V = _trace_adapted_basis(tr)
    if t % g:
        return None
    Mn = _congruence(V, M)
    # put a non-isotropic vector last so the norm equation is quadratic in it
    if Mn[3][3] == 0:
        k = next((k for k in (1, 2) if Mn[k][k] != 0), None)
        if k is not None:
            for r in range(4):
                V[r][k], V[r][3] = V[r][3], V[r][k]
        else:
            k = 1 if Mn[1][3] != 0 else 2
            for r in range(4):
                V[r][3] += V[r][k]
        Mn = _congruence(V, M)
    assert Mn[3][3] != 0
    G = frobenius_gram(spec)
    scale = 1
    for row in G.rat + G.irr:
        for v in row:
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
    Gr = [[int(v * scale) for v in row] for row in G.rat]
    Gi = [[int(v * scale) for v in row] for row in G.irr]
    Gr_n = _congruence(V, Gr)
    Gi_n = _congruence(V, Gi)
    surd = not G.is_rational
    root = math.sqrt(G.c)
    Gf = np.array(Gr_n, dtype=float) / scale + root * np.array(Gi_n, dtype=float) / scale
    y0 = t // g
    A = Gf[1:, 1:]
    g0 = Gf[1:, 0]
    A_inv = np.linalg.inv(A)
    center = -y0 * (A_inv @ g0)
    m0 = float(y0 * y0 * (Gf[0, 0] - g0 @ A_inv @ g0))
    return _QuaternionSetup(
        V, y0, Mn, 2 * d, Gr_n, Gi_n, scale, G.c, surd,
        [float(x) for x in center], A_inv.tolist(), m0,
    )


def _isqrt_vec(D):
    s = np.floor(np.sqrt(D.astype(float))).astype(np.int64)
    s = np.maximum(s, 0)
    over = s * s > D
    while over.any():
        s[over] -= 1
        over = s * s > D
    under = (s + 1) * (s + 1) <= D
    while under.any():
        s[under] += 1
        under = (s + 1) * (s + 1) <= D
    return s


def _z2_range(setup, z1, r2):
    Ai = setup.A_inv
    B = np.linalg.inv(np.array([[Ai[0][0], Ai[0][1]], [Ai[1][0], Ai[1][1]]]))
    w1 = z1 - setup.center[0]
    schur = B[0, 0] - B[0, 1] ** 2 / B[1, 1]
    rem = r2 - schur * w1 * w1
    if rem < 0:
        return None
    mid = setup.center[1] - B[0, 1] * w1 / B[1, 1]
    hw = math.sqrt(rem / B[1, 1])
    return math.floor(mid - hw) - 1, math.ceil(mid + hw) + 1


def _quaternion_worker(setup, z1_lo, z1_hi, bound_scaled, r2, use_numpy):
    Mn, y0, two_d = setup.Mn, setup.y0, setup.two_d
    a33 = Mn[3][3]
    keys = []
    Gr, Gi = setup.G_rat, setup.G_irr
    for z1 in range(z1_lo, z1_hi + 1):
        rng = _z2_range(setup, z1, r2)
        if rng is None:
            continue
        lo, hi = rng
        b0 = Mn[3][0] * y0 + Mn[3][1] * z1
        g_const = Mn[0][0] * y0 * y0 + Mn[1][1] * z1 * z1 + 2 * Mn[0][1] * y0 * z1
        g_lin = 2 * (Mn[0][2] * y0 + Mn[1][2] * z1)
        if use_numpy:
            z2 = np.arange(lo, hi + 1, dtype=np.int64)
            beta = b0 + Mn[3][2] * z2
            gamma = g_const + g_lin * z2 + Mn[2][2] * z2 * z2
            D = beta * beta - a33 * (gamma - two_d)
            ok = D >= 0
            z2, beta, D = z2[ok], beta[ok], D[ok]
            s = _isqrt_vec(D)
            sq = s * s == D
            z2, beta, s = z2[sq], beta[sq], s[sq]
            found = []
            for sign in (1, -1):
                num = -beta + sign * s
                div = num % a33 == 0
                for zz2, nn, ss in zip(z2[div].tolist(), num[div].tolist(), s[div].tolist()):
                    if sign == -1 and ss == 0:
                        continue
                    found.append((zz2, nn // a33))
        else:
            found = []
            for zz2 in range(lo, hi + 1):
                beta = b0 + Mn[3][2] * zz2
                gamma = g_const + g_lin * zz2 + Mn[2][2] * zz2 * zz2
                D = beta * beta - a33 * (gamma - two_d)
                if D < 0:
                    continue
                s = isqrt(D)
                if s * s != D:
                    continue
                for num in {-beta + s, -beta - s}:
                    if num % a33 == 0:
                        found.append((zz2, num // a33))
        for zz2, z3 in found:
            y = (y0, z1, zz2, z3)
            X = sum(Gr[k][l] * y[k] * y[l] for k in range(4) for l in range(4))
            if setup.surd:
                Y = sum(Gi[k][l] * y[k] * y[l] for k in range(4) for l in range(4))
                if surd_le(X, Y, setup.c, bound_scaled):
                    keys.append((X, Y))
            elif X <= bound_scaled:
                keys.append(X)
    return keys


def quaternion_certificate_prime(spec: AlgebraSpec, p: MonicIntPolynomial):
    """A division prime at which p is reducible (so no solutions exist), or None."""
    for q in spec.ramified:
        fac = factor_mod_q(p, q)
        if len(fac.factors) > 1:
            return q
    return None


def quaternion_norms(spec: AlgebraSpec, p: MonicIntPolynomial, T, threads=1) -> NormSet:
    if p.degree != 2:
        raise ValueError("quaternion censuses need a quadratic")
    verify_order(spec)
    setup = _quaternion_setup(spec, p)
    G = frobenius_gram(spec)
    surd = not G.is_rational
    if setup is None:
        return NormSet([], 1, G.c, surd)
    T2 = as_fraction(T) ** 2
    bound_scaled = T2 * setup.scale if surd else math.floor(T2 * setup.scale)
    r2 = (float(T2) - setup.m0) * (1 + 1e-9) + 1e-6
    if r2 < 0:
        return NormSet([], setup.scale, setup.c, surd)
    hw = math.sqrt(r2 * setup.A_inv[0][0])
    z1_lo = math.floor(setup.center[0] - hw) - 1
    z1_hi = math.ceil(setup.center[0] + hw) + 1
    # magnitude of the discriminant must fit int64 for the vectorised path
    zmax = max(abs(z1_lo), abs(z1_hi)) + int(math.sqrt(r2 * max(setup.A_inv[k][k] for k in range(3)))) + abs(int(max(map(abs, setup.center)))) + 2
    coef = max(abs(v) for row in setup.Mn for v in row)
    est = 40 * (coef * (zmax + abs(setup.y0))) ** 2 + abs(coef * setup.two_d)
    use_numpy = est < _INT64_SAFE
    chunks = _split_range(z1_lo, z1_hi, _chunk_count(threads))
    parts = _run_chunks(
        _quaternion_worker,
        [(setup, lo, hi, bound_scaled, r2, use_numpy) for lo, hi in chunks],
        threads,
    )
    keys = [k for part in parts for k in part]
    keys.sort()
    return NormSet(keys, setup.scale, setup.c, surd)


def order_census_quaternion(spec: AlgebraSpec, p: MonicIntPolynomial, T, threads=1) -> int:
    """# of order elements with reduced charpoly p and Frobenius norm <= T."""
    if quaternion_certificate_prime(spec, p) is not None:
        return 0
    return len(quaternion_norms(spec, p, T, threads))


# --- series and tables ------------------------------------------------------


def census_mode(spec: AlgebraSpec, p: MonicIntPolynomial) -> str:
    if spec.is_quaternion:
        return "quaternion_order"
    return "matrix_n2" if p.degree == 2 else "matrix_generic"


def run_census(spec: AlgebraSpec, p: MonicIntPolynomial, grid, threads=1) -> CensusSeries:
    grid = sorted(as_fraction(T) for T in grid)
    mode = census_mode(spec, p)
    if p.degree <= 3 and not is_irreducible_over_Q(p):
        raise ValueError("census needs an irreducible polynomial")
    if mode == "quaternion_order":
        q = quaternion_certificate_prime(spec, p)
        if q is not None:
            return CensusSeries(grid, [0] * len(grid), mode, infeasible_prime=q, norms=NormSet([]))
        norms = quaternion_norms(spec, p, grid[-1], threads)
    elif mode == "matrix_n2":
        norms = matrix_norms_n2(p, grid[-1], threads)
    else:
        norms = matrix_norms_generic(p, grid[-1], threads)
    return CensusSeries(grid, [norms.count(T) for T in grid], mode, norms=norms)


def convergence_table(series: CensusSeries, C, exponent) -> list:
    """Rows (T, N(T), N(T)/T^m, N(T)/(C T^m)); zeros when C is undefined."""
    rows = []
    for T, N in zip(series.grid, series.counts):
        Tm = float(T) ** exponent
        per = N / Tm
        ratio = per / float(C) if C else 0.0
        rows.append((T, N, per, ratio))
    return rows
