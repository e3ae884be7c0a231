"""Exception hierarchy.

Every failure that can reach the command line carries a reason code from a
closed set, plus the exit status it maps to.
"""

SPEC_ERROR = 2
HYPOTHESIS_VIOLATION = 3
INFEASIBLE = 4

REASON_CODES = {
    "spec_unreadable": SPEC_ERROR,
    "spec_invalid": SPEC_ERROR,
    "order_basis_required": SPEC_ERROR,
    "field_invariants_required": SPEC_ERROR,
    "fixture_mismatch": SPEC_ERROR,
    "unsupported_degree": SPEC_ERROR,
    "reducible_polynomial": HYPOTHESIS_VIOLATION,
    "not_integrally_closed": HYPOTHESIS_VIOLATION,
    "definite_algebra": HYPOTHESIS_VIOLATION,
    "invalid_order": HYPOTHESIS_VIOLATION,
    "infeasible_division_prime": INFEASIBLE,
}


class CensusError(Exception):
    """Base class; ``reason`` is one of REASON_CODES."""

    reason = "spec_invalid"

    def __init__(self, message, reason=None):
        super().__init__(message)
        if reason is not None:
            self.reason = reason
        if self.reason not in REASON_CODES:
            raise ValueError(f"unknown reason code {self.reason!r}")

    @property
    def exit_code(self):
        return REASON_CODES[self.reason]


class SpecError(CensusError):
    reason = "spec_invalid"


class FixtureError(SpecError):
    reason = "fixture_mismatch"


class UnsupportedDegreeError(SpecError):
    reason = "unsupported_degree"


class HypothesisError(CensusError):
    reason = "reducible_polynomial"


class OrderError(HypothesisError):
    reason = "invalid_order"


class InfeasibleError(CensusError):
    reason = "infeasible_division_prime"

    def __init__(self, message, prime=None):
        super().__init__(message)
        self.prime = prime


class GuardError(ValueError):
    """Enumeration would exceed its size guard."""
