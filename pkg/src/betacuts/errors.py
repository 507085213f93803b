"""Exception hierarchy shared by all modules."""


class BetaCutsError(Exception):
    pass


class HypergraphError(BetaCutsError, ValueError):
    pass


class DuplicateEdge(HypergraphError):
    pass


class LoopEdge(HypergraphError):
    pass


class NodeOutOfRange(HypergraphError):
    pass


class InfeasibleParams(BetaCutsError, ValueError):
    pass


class PolynomialSyntaxError(BetaCutsError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownSense(PolynomialSyntaxError):
    pass


class InvalidFlower(BetaCutsError, ValueError):
    pass


class InvalidBlockArgs(BetaCutsError, ValueError):
    pass


class InvalidWalk(BetaCutsError, ValueError):
    pass


class EvenWalk(InvalidWalk):
    pass


class NotCycleHypergraph(BetaCutsError, ValueError):
    pass


class PointNotInFlowerRelaxation(BetaCutsError, ValueError):
    def __init__(self, message, cut=None, violation=None):
        super().__init__(message)
        self.cut = cut
        self.violation = violation


class MalformedPath(BetaCutsError, AssertionError):
    pass


class LpError(BetaCutsError, RuntimeError):
    pass


class IterationLimit(LpError):
    pass


class NumericalFailure(LpError):
    pass


class PhaseOrderError(BetaCutsError, ValueError):
    pass


class ZeroReference(BetaCutsError, ZeroDivisionError):
    pass


class TooLarge(BetaCutsError, ValueError):
    pass


class NoRepetition(BetaCutsError, ValueError):
    pass


class BadIndices(BetaCutsError, ValueError):
    pass
