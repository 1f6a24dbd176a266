"""Exception types shared across the package.

Each error class maps to a distinct command-line exit code, so library
callers and the CLI agree on failure semantics.
"""


class CarlitzError(Exception):
    """Base class for all package errors."""


class EmptySetError(CarlitzError):
    """Raised when a requested composition set or witness is empty."""


class BudgetExceededError(CarlitzError):
    """Raised when an enumeration would exceed the configured tuple budget."""

    def __init__(self, required: int, budget: int, message: str | None = None):
        self.required = required
        self.budget = budget
        super().__init__(
            message
            or f"enumeration needs {required} candidate tuples, budget is {budget}"
        )


class InfeasibleMatrixError(CarlitzError):
    """Raised when a column matrix fails the feasibility conditions."""


class StabilizationInconclusiveError(CarlitzError):
    """Raised when a valuation fails to stabilize before the truncation cap."""

    def __init__(self, m: int, t_cap: int, message: str | None = None):
        self.m = m
        self.t_cap = t_cap
        super().__init__(
            message
            or f"valuation v_{m} did not stabilize for truncations up to t={t_cap}"
        )


class MonotoneViolationError(CarlitzError):
    """Raised when the tracked truncation remainder increases.

    The remainder is proved non-increasing, so this error indicates a bug
    (or a genuine counterexample) and is never silently swallowed.
    """
