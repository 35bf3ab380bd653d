"""Exception types shared across the package.

Every error carries a short machine-readable ``reason`` plus whatever context
makes the failure replayable (the offending permutation, value or position).
"""

from __future__ import annotations


class PatpopError(ValueError):
    reason = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context

    def as_dict(self) -> dict:
        return {"reason": self.reason, "message": str(self), **{k: _plain(v) for k, v in self.context.items()}}


class InvalidPermutation(PatpopError):
    reason = "invalid-permutation"


class NotAvoiding(PatpopError):
    """Raised when an operation needs a 132-avoiding input and did not get one."""

    reason = "not-132-avoiding"


class InvalidPositions(PatpopError):
    reason = "invalid-positions"


class InvalidTree(PatpopError):
    reason = "invalid-tree"


class NoMove(PatpopError):
    """No move site exists for the requested value.

    ``condition`` names the first move condition that failed and ``position``
    the offending 1-based position, when there is one.
    """

    reason = "no-move"


class IneligiblePattern(PatpopError):
    reason = "ineligible-pattern"


class NotInDomain(PatpopError):
    reason = "not-in-domain"


class NotInImage(PatpopError):
    reason = "not-in-image"


class NotRealizable(PatpopError):
    reason = "not-realizable"


class InvalidPartition(PatpopError):
    reason = "invalid-partition"


class BudgetExceeded(PatpopError):
    reason = "budget-exceeded"


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_plain(v) for v in value)
    return value
