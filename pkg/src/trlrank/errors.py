"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes: validation errors exit 2, budget
failures exit 3, invariant violations (always a bug, never a finding)
exit 4.
"""


class TrlrankError(Exception):
    """Base class for all package errors."""


class ValidationError(TrlrankError):
    """Malformed input: bad dimensions, non-prime modulus, bad file, ..."""


class BudgetExceededError(TrlrankError):
    """A resource guard tripped (S-pair count, wall clock, enumeration size).

    Raised instead of returning a possibly-wrong answer.
    """


class InvariantViolationError(TrlrankError):
    """An internal cross-check failed.  Indicates a bug in this package."""
