"""Exception types shared by the witness engines."""

from __future__ import annotations


class HypothesisError(ValueError):
    """Inputs fall outside the parameter range the engines are proved for."""


class EmbeddingError(ValueError):
    """A placement routine was called with an unmet capacity or budget."""


class FanPresent(ValueError):
    """Raised when a neighbourhood decomposition is requested but the
    neighbourhood holds an m-matching (so the caller should emit a fan)."""

    def __init__(self, center: int, matching):
        super().__init__(f"vertex {center} has a neighbourhood matching of size {len(matching)}")
        self.center = center
        self.matching = matching


class TheoremViolation(RuntimeError):
    """A branch that the counting argument proves total failed to produce
    its object.  Carries the claim label and enough context to replay."""

    def __init__(self, claim: str, message: str, reproducer: dict | None = None):
        super().__init__(f"[{claim}] {message}")
        self.claim = claim
        self.reproducer = reproducer or {}


class SearchBudgetExhausted(RuntimeError):
    """The budgeted cycle search gave up before finding a cycle."""

    def __init__(self, message: str, steps: int = 0):
        super().__init__(message)
        self.steps = steps
