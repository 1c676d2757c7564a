"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DecompError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(DecompError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class BadAnchor(GraphError):
    pass


class UnknownName(GraphError):
    pass


class ExhaustedRetries(DecompError):
    pass


class NotCubic(GraphError):
    pass


class NotConnected(GraphError):
    pass


class NotPerfect(GraphError):
    pass


class EdgeNotInGraph(GraphError):
    pass


class OrientationFailed(DecompError):
    pass


class PropagationStall(DecompError):
    """Forced propagation reached a nonempty residual with no degree-1/2 vertex."""


class BudgetExceeded(DecompError):
    pass


class InvalidFormula(DecompError, ValueError):
    pass


class OccurrenceViolation(InvalidFormula):
    def __init__(self, var: int, count: int, expected: str) -> None:
        super().__init__(f"variable x{var + 1} occurs {count} times, expected {expected}")
        self.var = var
        self.count = count


class ClauseCountMismatch(InvalidFormula):
    pass


class NotDegreeTwo(GraphError):
    pass


class NotSatisfying(DecompError, ValueError):
    pass


class InvalidInput(DecompError, ValueError):
    pass


class InternalCaseMiss(DecompError):
    pass


class FormatError(DecompError, ValueError):
    """Malformed graph, marks, decomposition or CNF file."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
