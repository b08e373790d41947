"""Error kinds raised across twoeig."""


class TwoEigError(Exception):
    """Base class for every error raised on purpose by this package."""


class InvalidParameterError(TwoEigError, ValueError):
    pass


class NotConnectedError(TwoEigError):
    """An operation whose statement assumes connectivity got a disconnected graph."""


class Graph6ParseError(TwoEigError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class NumericError(TwoEigError):
    """The symmetric eigensolver or SVD did not converge."""


class PropertyVacuousError(TwoEigError):
    """p(2,s) was asked of a graph that has no path of length 2."""


class BudgetExceededError(TwoEigError):
    """A bounded search ran out of steps before exhausting its choice tree."""


class ContradictionError(TwoEigError):
    """A census record disagrees with a proven theorem statement."""
