"""Problem specs: JSON files with exact integers and rationals as strings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpecError
from .poly import MonicIntPolynomial
from .quaternion import AlgebraSpec, split_algebra

CENSUS_DEFAULTS = {"T_max": 100, "grid_points": 6, "threads": 1}


@dataclass(frozen=True)
class ProblemSpec:
    polynomial: MonicIntPolynomial
    algebra: AlgebraSpec
    field_invariants: dict | None = None
    T_max: Fraction = Fraction(100)
    grid_points: int = 6
    threads: int = 1
    irreducibility_certificate: int | None = None

    @property
    def degree(self):
        return self.polynomial.degree

    @property
    def exponent(self):
        return self.degree * (self.degree - 1) // 2


def _int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{name} must be an integer")
    return value


def _rational(value, name):
    if isinstance(value, bool) or isinstance(value, float):
        raise SpecError(f"{name} must be an integer or a rational string, not {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SpecError(f"{name}: cannot read {value!r} as a rational") from None


def _algebra(record, n):
    if not isinstance(record, dict) or "type" not in record:
        raise SpecError("algebra must be an object with a 'type'")
    kind = record["type"]
    if kind == "matrix":
        return split_algebra(n)
    if kind != "quaternion":
        raise SpecError(f"unknown algebra type {kind!r}")
    if n != 2:
        raise SpecError("a quaternion algebra needs a degree 2 polynomial")
    if "order_basis" not in record:
        raise SpecError("order_basis required for quaternion algebras", reason="order_basis_required")
    a, b = _int(record.get("a"), "algebra.a"), _int(record.get("b"), "algebra.b")
    rows = record["order_basis"]
    if not isinstance(rows, list) or len(rows) != 4 or any(
        not isinstance(r, list) or len(r) != 4 for r in rows
    ):
        raise SpecError("order_basis must be a 4x4 matrix")
    basis = tuple(
        tuple(_rational(c, f"order_basis[{i}][{j}]") for j, c in enumerate(r))
        for i, r in enumerate(rows)
    )
    return AlgebraSpec(2, "quaternion", a, b, basis)


def parse_problem(data: dict) -> ProblemSpec:
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    coeffs = data.get("polynomial")
    if not isinstance(coeffs, list) or len(coeffs) < 3:
        raise SpecError("polynomial must be an ascending coefficient list of degree >= 2")
    coeffs = tuple(_int(c, "polynomial coefficient") for c in coeffs)
    if coeffs[-1] != 1:
        raise SpecError("polynomial must be monic")
    p = MonicIntPolynomial(coeffs)
    algebra = _algebra(data.get("algebra", {"type": "matrix"}), p.degree)

    inv = data.get("field_invariants")
    if inv is not None and not isinstance(inv, dict):
        raise SpecError("field_invariants must be an object")
    if p.degree >= 3 and inv is None:
        raise SpecError(
            "field_invariants required for degree >= 3", reason="field_invariants_required"
        )

    census = {**CENSUS_DEFAULTS, **(data.get("census") or {})}
    T_max = _rational(census["T_max"], "census.T_max")
    if T_max <= 0:
        raise SpecError("census.T_max must be positive")
    points = _int(census["grid_points"], "census.grid_points")
    threads = _int(census["threads"], "census.threads")
    if points < 1 or threads < 1:
        raise SpecError("grid_points and threads must be positive")

    cert = data.get("irreducibility_certificate")
    if cert is not None:
        cert = _int(cert, "irreducibility_certificate")
    return ProblemSpec(p, algebra, inv, T_max, points, threads, cert)


def load_problem(path) -> ProblemSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, UnicodeDecodeError) as exc:
        raise SpecError(f"cannot read {path}: {exc}", reason="spec_unreadable") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}", reason="spec_unreadable") from None
    return parse_problem(data)
