"""Exception hierarchy shared by the algebra kernel, the verifiers and the CLI."""

from typing import Optional


class QuasishiftError(Exception):
    pass


class DimensionError(QuasishiftError, ValueError):
    """Index outside 1..d, mismatched ambient dimensions, or an invalid d."""


class PreconditionError(QuasishiftError, ValueError):
    def __init__(self, contract: str, message: str):
        super().__init__(f"[{contract}] {message}")
        self.contract = contract


class ParseError(QuasishiftError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class BudgetExceededError(QuasishiftError):
    def __init__(self, estimate: int, budget: int, what: Optional[str] = None):
        label = f" for {what}" if what else ""
        super().__init__(
            f"estimated {estimate} terms{label} exceeds the term budget of {budget}"
        )
        self.estimate = estimate
        self.budget = budget


class DecompositionError(QuasishiftError, ArithmeticError):
    """The central decomposition linear system has no solution."""
