"""Binary quadratic forms (a, b, c) = ax^2 + bxy + cy^2 of discriminant D.

Definite reduction, indefinite reduction cycles and composition; enough to
compute class numbers of quadratic fields two independent ways.
"""

from math import gcd, isqrt


def discriminant(f):
    a, b, c = f
    return b * b - 4 * a * c


def xgcd(a, b):
    """Return (g, x, y) with a*x + b*y = g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def is_primitive(f):
    return gcd(gcd(f[0], f[1]), f[2]) == 1


def principal_form(D):
    b = D % 2
    return (1, b, (b * b - D) // 4)


def conjugate(f):
    """Form of the conjugate ideal (the inverse class)."""
    a, b, c = f
    return (a, -b, c)


def compose(f1, f2):
    """Dirichlet composition of two forms with a > 0 and equal discriminant."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    if a1 <= 0 or a2 <= 0:
        raise ValueError("composition needs positive leading coefficients")
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1 = 0
        d = a1
    else:
        d, u, _ = xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    out = (a3, b3, c3)
    assert discriminant(out) == discriminant(f1)
    return out


# --- definite forms ---------------------------------------------------------


def _normalize(f):
    a, b, c = f
    D = b * b - 4 * a * c
    k = (a - b) // (2 * a)
    b = b + 2 * a * k
    return (a, b, (b * b - D) // (4 * a))


def reduce_definite(f):
    a, b, c = f
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise ValueError("not a positive definite form")
    a, b, c = _normalize((a, b, c))
    while a > c:
        a, b, c = _normalize((c, -b, a))
    if a == c and b < 0:
        b = -b
    return (a, b, c)


def reduced_definite_forms(D):
    """All reduced primitive positive definite forms of discriminant D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if is_primitive((a, b, c)):
                out.append((a, b, c))
        a += 1
    return out


# --- indefinite forms -------------------------------------------------------


def _norm_b(b, a, D, s):
    """Representative of b mod 2|a| used by the reduction operator."""
    m = 2 * abs(a)
    if abs(a) > s:
        r = b % m
        if r > abs(a):
            r -= m
        return r
    return s - ((s - b) % m)


def rho(f, D=None):
    a, b, c = f
    if D is None:
        D = b * b - 4 * a * c
    s = isqrt(D)
    r = _norm_b(-b, c, D, s)
    return (c, r, (r * r - D) // (4 * c))


def is_reduced_indefinite(f, D=None):
    a, b, c = f
    if D is None:
        D = b * b - 4 * a * c
    s = isqrt(D)
    return 0 < b <= s and 2 * abs(a) + b >= s + 1 and 2 * abs(a) - b <= s


def reduce_indefinite(f):
    D = discriminant(f)
    if D <= 0 or isqrt(D) ** 2 == D:
        raise ValueError("not an indefinite irrational form")
    while not is_reduced_indefinite(f, D):
        f = rho(f, D)
    return f


def cycle(f):
    """Reduction cycle of an indefinite form, as a frozenset."""
    f = reduce_indefinite(f)
    D = discriminant(f)
    seen = [f]
    g = rho(f, D)
    while g != f:
        seen.append(g)
        g = rho(g, D)
    return frozenset(seen)


def reduced_indefinite_forms(D):
    """All reduced primitive indefinite forms of discriminant D > 0."""
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4  # negative
        m = -ac
        for a in range(1, m + 1):
            if m % a:
                continue
            for sa in (a, -a):
                f = (sa, b, ac // sa)
                if is_reduced_indefinite(f, D) and is_primitive(f):
                    out.append(f)
    return out


def narrow_class_number(D):
    """Number of proper equivalence classes of primitive forms, D > 0."""
    remaining = set(reduced_indefinite_forms(D))
    count = 0
    while remaining:
        f = remaining.pop()
        remaining -= cycle(f)
        count += 1
    return count


# --- principality and ideal classes ----------------------------------------


def is_principal(f):
    """True iff the ideal attached to f (a > 0) is principal.

    That is, f represents +1 or -1.
    """
    D = discriminant(f)
    if D < 0:
        return reduce_definite(f) == reduce_definite(principal_form(D))
    b0 = D % 2
    plus = principal_form(D)
    minus = (-1, b0, (D - b0 * b0) // 4)
    g = reduce_indefinite(f)
    return g in cycle(plus) or g in cycle(minus)


def primitive_ideals(D, max_norm):
    """Forms (a, b, c) of the primitive ideals [a, (b + sqrt D)/2], a <= max_norm."""
    out = []
    for a in range(1, max_norm + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a) == 0:
                out.append((a, b, (b * b - D) // (4 * a)))
    return out


def class_number_by_ideals(D):
    """Class number by partitioning ideals of norm below the Minkowski bound."""
    from mpmath import mp, mpf, pi, sqrt, floor

    with mp.workdps(30):
        if D < 0:
            bound = 2 / pi * sqrt(mpf(-D))
        else:
            bound = sqrt(mpf(D)) / 2
        max_norm = int(floor(bound))
    reps = []
    for f in primitive_ideals(D, max(max_norm, 1)):
        if not any(is_principal(compose(f, conjugate(g))) for g in reps):
            reps.append(f)
    return len(reps)
