"""Exception types shared across the toolkit."""

from __future__ import annotations


class WitskitError(Exception):
    """Base class for all toolkit-specific errors."""


class EmptySupport(WitskitError):
    """A distribution was constructed with no positive-probability atoms."""


class NotNormalized(WitskitError):
    """Probabilities of a distribution do not sum to exactly one."""


class DomainMismatch(WitskitError):
    """A strategy map is not defined on exactly its required domain."""


class EmptyEdgeSet(WitskitError):
    """The graph reduction needs at least one edge to define the noise support."""


class TooLarge(WitskitError):
    """A brute-force oracle was asked to run above its configured size limit."""


class ImproperColoring(WitskitError):
    """A coloring assigns equal values to the endpoints of some edge."""


class CostTooHigh(WitskitError):
    """A strategy is too expensive for the coloring conversion to apply."""


class BudgetExceeded(WitskitError):
    """The exact solver's certified search space exceeds the allowed budget."""

    def __init__(self, search_space: int, budget: int):
        self.search_space = search_space
        self.budget = budget
        super().__init__(
            f"transport search space of {search_space} maps exceeds budget {budget}"
        )


class InputFormatError(WitskitError):
    """An input file or document does not match its expected format."""
