"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <k>: PASS|FAIL ...`` line; the lines
are repeated in the pytest terminal summary.  Run standalone with
``python tests/test_acceptance.py``.
"""

import math
import sys
from fractions import Fraction as F
from functools import lru_cache
from pathlib import Path

import pytest
from mpmath import mp, mpf, pi

sys.path.insert(0, str(Path(__file__).parent))

from charpoly_census import pipeline, quadforms as qf
from charpoly_census.census import run_census
from charpoly_census.constant import assemble_constant, lambda_fn, zeta
from charpoly_census.finite_oracle import division_orbit_census_mod, matrix_conjugacy_census_mod
from charpoly_census.local import local_profiles, ramification_data, sl_measure_product
from charpoly_census.number_field import compute_invariants_quadratic, unit_norm
from charpoly_census.problem import parse_problem
from charpoly_census.quaternion import AlgebraSpec, frobenius_gram, surd_le
from conftest import HURWITZ_LIKE, poly
from oracles import matrix_box_norms_n2, quaternion_box_norms, smallest_unit

RESULTS = {}

GOLDEN_SPEC = {"polynomial": [-1, -1, 1], "algebra": {"type": "matrix"}, "census": {"T_max": 10000, "grid_points": 5}}


def report(k, ok, detail):
    line = f"ACCEPTANCE {k}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def ratios_ok(ratios, lo, hi):
    last_in = lo <= ratios[-1] <= hi
    trend = abs(ratios[-1] - 1) <= abs(ratios[0] - 1)
    return last_in, trend


@lru_cache(maxsize=None)
def golden_csv(threads):
    problem = parse_problem(GOLDEN_SPEC)
    text, series, K = pipeline.census_csv(problem, threads=threads)
    return text, tuple(series.grid), tuple(series.counts), K.C


def test_1_split_asymptotic():
    _, grid, counts, C = golden_csv(1)
    assert list(grid) == [625, 1250, 2500, 5000, 10000]
    ratios = [N / (float(C) * float(T)) for T, N in zip(grid, counts)]
    last_in, trend = ratios_ok(ratios, 0.90, 1.10)
    ok = report(
        1,
        last_in and trend,
        f"C={float(C):.6g} ratios={[round(r, 5) for r in ratios]} "
        f"window[0.90,1.10]={'ok' if last_in else 'out'} trend={'ok' if trend else 'violated'}",
    )
    assert ok


def test_2_quaternion_asymptotic():
    p = poly(-1, -1, 1)
    spec = AlgebraSpec(2, "quaternion", -1, 3, HURWITZ_LIKE)
    K = assemble_constant(compute_invariants_quadratic(p), local_profiles(p, spec), 2)
    series = run_census(spec, p, [375, 750, 1500, 3000])
    ratios = [N / (float(K.C) * float(T)) for T, N in zip(series.grid, series.counts)]
    last_in, trend = ratios_ok(ratios, 0.85, 1.15)
    ok = report(
        2,
        last_in and trend,
        f"C={float(K.C):.6g} counts={series.counts} ratios={[round(r, 5) for r in ratios]} "
        f"window[0.85,1.15]={'ok' if last_in else 'out'} trend={'ok' if trend else 'violated'}",
    )
    assert ok


def test_3_division_orbit_counts():
    cases = [(poly(-1, -1, 1), 3), (poly(-5, 0, 1), 5)]
    found = []
    ok = True
    for p, q in cases:
        ((e, _),) = ramification_data(p, q)
        counts = [division_orbit_census_mod(p, q, k) for k in (1, 2)]
        found.append((str(p), q, counts, 2 // e))
        ok &= counts == [2 // e, 2 // e]
    ok &= [c[2] for c in found] == [[2, 2], [1, 1]]
    assert report(3, ok, f"(p, q, orbits k=1..2, n/e) = {found}")


def test_4_single_orbit():
    p = poly(-1, -1, 1)
    small = [matrix_conjugacy_census_mod(p, 2, q, 1)[1] for q in (2, 3)]
    raw5 = [matrix_conjugacy_census_mod(p, 2, 5, k, lift=0)[1] for k in (1, 2)]
    lifted5 = [matrix_conjugacy_census_mod(p, 2, 5, k)[1] for k in (1, 2)]
    ok = small == [1, 1] and raw5[1] == 1 and lifted5 == [1, 1]
    assert report(
        4, ok, f"orbits q=2,3 k=1: {small}; q=5 raw k=1,2: {raw5}; q=5 liftable k=1,2: {lifted5}"
    )


def test_5_measure_identities():
    with mp.workdps(50):
        d2 = abs(sl_measure_product(2, 10**4) - 6 / pi**2)
        d3 = abs(sl_measure_product(3, 10**4) - 1 / (zeta(2) * zeta(3)))
        l1 = abs(lambda_fn(1) - pi / 6)
        l2 = abs(lambda_fn(2) - pi**2 / 90)
    ok = d2 < 1e-3 and d3 < 1e-3 and l1 < 1e-12 and l2 < 1e-12
    assert report(5, ok, f"|SL2-6/pi^2|={float(d2):.3g} |SL3-1/(z2z3)|={float(d3):.3g} |L(1)-pi/6|={float(l1):.3g} |L(2)-pi^2/90|={float(l2):.3g}")


FIELDS = {5: (-1, -1, 1), 8: (-2, 0, 1), 13: (-3, -1, 1), -3: (1, 1, 1), -4: (1, 0, 1), -23: (6, 1, 1)}
EXPECTED_H = {5: 1, 8: 1, 13: 1, -3: 1, -4: 1, -23: 3}


def expected_R(d):
    with mp.workdps(50):
        closed = {5: mp.log((1 + mp.sqrt(5)) / 2), 8: mp.log(1 + mp.sqrt(2)), 13: mp.log((3 + mp.sqrt(13)) / 2)}
        return closed.get(d, mpf(1))


def test_6_class_numbers_and_regulators():
    rows, ok = [], True
    for d, coeffs in FIELDS.items():
        inv = compute_invariants_quadratic(poly(*coeffs))
        if d < 0:
            oracle_h = len(qf.reduced_definite_forms(d))
            oracle_R = mpf(1)
        else:
            u, v = smallest_unit(d)
            narrow = qf.narrow_class_number(d)
            oracle_h = narrow if unit_norm(d, u, v) == -1 else narrow // 2
            with mp.workdps(50):
                oracle_R = mp.log(u + v * (d % 2 + mp.sqrt(d)) / 2)
        good = (
            inv.d == d
            and inv.h == EXPECTED_H[d] == oracle_h
            and abs(inv.R - expected_R(d)) < 1e-9
            and abs(inv.R - oracle_R) < 1e-9
        )
        ok &= good
        rows.append(f"d={d}:h={inv.h},R={float(inv.R):.9f}{'' if good else '(!)'}")
    assert report(6, ok, " ".join(rows))


ORACLE_QUADRATICS = [(-1, -1, 1), (1, 0, 1), (-2, 0, 1), (6, 1, 1), (5, -1, 1)]


def test_7_oracle_equality():
    from charpoly_census.census import matrix_norms_n2, quaternion_norms

    ok, notes = True, []
    for coeffs in ORACLE_QUADRATICS:
        p = poly(*coeffs)
        engine = matrix_norms_n2(p, 12)
        box = matrix_box_norms_n2(p, 12)
        # equal sorted norm lists <=> equal counts at every T <= 12
        same = engine.keys == box
        ok &= same
        notes.append(f"{p}:{len(box)}{'' if same else '!='}")
    spec = AlgebraSpec(2, "quaternion", -1, 3, HURWITZ_LIKE)
    p = poly(-1, -1, 1)
    engine = quaternion_norms(spec, p, 5)
    box = quaternion_box_norms(spec, p, 5)
    c = frobenius_gram(spec).c
    for j in range(1, 21):  # T = j/4
        T2 = F(j, 4) ** 2
        n_box = sum(1 for X, Y in box if surd_le(X, Y, c, T2))
        same = engine.count(F(j, 4)) == n_box
        ok &= same
    notes.append(f"quaternion T<=5:{len(box)}")
    assert report(7, ok, " ".join(notes))


def test_8_thread_determinism():
    texts = {t: golden_csv(t)[0] for t in (1, 2, 8)}
    ok = texts[1] == texts[2] == texts[8]
    assert report(8, ok, f"csv bytes threads=1,2,8 identical={ok} ({len(texts[1].encode())} bytes)")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
