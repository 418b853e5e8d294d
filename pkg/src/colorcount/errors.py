"""Exception types shared across the package."""
from __future__ import annotations


class ColorCountError(Exception):
    """Base class; ``kind`` is the machine-readable tag printed by the CLI."""

    kind = "error"


class BudgetExceeded(ColorCountError):
    kind = "budget_exceeded"

    def __init__(self, what: str, bound: int, budget: int):
        self.what = what
        self.bound = bound
        self.budget = budget
        super().__init__(f"{what}: predicted size {bound} exceeds budget {budget}")


class Graph6Error(ColorCountError, ValueError):
    kind = "graph6_parse"

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at byte offset {offset}")


class GraphSpecError(ColorCountError, ValueError):
    kind = "graph_spec"


class UnsupportedFamily(ColorCountError, ValueError):
    kind = "unsupported_family"


class UndefinedStatistic(ColorCountError, ArithmeticError):
    kind = "undefined_statistic"
