"""Shared exception types."""

from __future__ import annotations


class InvariantViolation(RuntimeError):
    """A structural guarantee failed at runtime.

    Raised when a step that is provably total on valid input finds no
    admissible choice, or when a self-check on a constructed object fails.
    ``stage`` names the step that failed, in behavioral terms.
    """

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        message = stage if not detail else f"{stage}: {detail}"
        super().__init__(message)


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search hit its work budget before finishing.

    Distinct from "searched everything, found nothing": callers must not
    interpret this as a negative result.
    """

    def __init__(self, what: str, budget: int):
        self.what = what
        self.budget = budget
        super().__init__(f"{what}: budget of {budget} exhausted")
