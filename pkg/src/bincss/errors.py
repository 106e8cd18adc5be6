"""Exception types shared across the package."""

from __future__ import annotations


class BinCssError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(BinCssError, ValueError):
    """Operand shapes do not conform."""


class FormatError(BinCssError, ValueError):
    """A matrix file or literal could not be parsed."""


class BudgetExceeded(BinCssError):
    """An exhaustive search would exceed its evaluation budget.

    Solvers refuse instead of truncating, so ``required`` always carries the
    full size of the search space that was asked for.
    """

    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(f"{what}: search space of {required} evaluations exceeds budget {budget}")


def check_budget(what: str, required: int, budget: int) -> int:
    if required > budget:
        raise BudgetExceeded(what, required, budget)
    return required
