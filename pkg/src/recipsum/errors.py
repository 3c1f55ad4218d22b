"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(RuntimeError):
    """A configured cap (level, digits, subsets, horizon, budget) was hit.

    ``cap`` names the limit that was exceeded; ``achieved`` carries whatever
    partial progress the operation made before refusing.
    """

    def __init__(self, message: str, *, cap: str, achieved=None):
        super().__init__(message)
        self.cap = cap
        self.achieved = achieved
