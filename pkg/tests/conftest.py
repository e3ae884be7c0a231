import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from charpoly_census.poly import MonicIntPolynomial
from charpoly_census.quaternion import AlgebraSpec

HURWITZ_LIKE = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (F(1, 2), F(1, 2), F(1, 2), F(1, 2)))


def poly(*coeffs):
    return MonicIntPolynomial(tuple(coeffs))


@pytest.fixture
def golden():
    return poly(-1, -1, 1)


@pytest.fixture
def quat_spec():
    return AlgebraSpec(2, "quaternion", -1, 3, HURWITZ_LIKE)


@pytest.fixture
def quat_spec_7():
    return AlgebraSpec(2, "quaternion", -1, 7, HURWITZ_LIKE)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
