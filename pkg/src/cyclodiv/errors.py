"""Exception types shared across the package.

The CLI maps each class to a distinct exit code, so library code raises the
most specific one that applies.
"""


class CyclodivError(Exception):
    """Base class for all errors raised by cyclodiv."""


class PreconditionError(CyclodivError, ValueError):
    """An input violates an operation's precondition (non-monic divisor, b < 2, ...)."""


class BudgetExhausted(CyclodivError):
    """A factoring or search budget ran out before the answer was certain."""


class InvariantViolation(CyclodivError, AssertionError):
    """A computed result contradicts an invariant that must always hold."""


class PolySyntaxError(CyclodivError, ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")
