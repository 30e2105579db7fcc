"""Exception types shared across the package."""

from __future__ import annotations


class TrialGameError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TrialGameError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SearchRangeError(TrialGameError, ValueError):
    """A requested exhaustive search range is too large to enumerate."""


class ConfigError(TrialGameError, ValueError):
    """A run configuration failed validation.

    Carries the full list of offending fields so a caller can report
    every problem at once instead of fixing them one by one.
    """

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {p}" for p in self.problems))
