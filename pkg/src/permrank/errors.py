"""Exception and warning types raised across the package."""


class PermRankError(ValueError):
    """Base class for every input/precondition error in permrank."""


class NotABijection(PermRankError):
    pass


class OrderMismatch(PermRankError):
    pass


class NotAdjacentValues(PermRankError):
    pass


class PairOutOfRange(PermRankError):
    pass


class NegativeWeight(PermRankError):
    pass


class ZeroTotal(PermRankError):
    pass


class NonpositiveFactor(PermRankError):
    pass


class DuplicatePair(PermRankError):
    pass


class NotAMetric(PermRankError):
    """A strictly positive weight matrix was required but a zero weight was found."""


class NotDistinct(PermRankError):
    pass


class OrderTooLarge(PermRankError):
    pass


class InvalidPath(PermRankError):
    pass


class InvalidCycle(PermRankError):
    pass


class OddCycle(PermRankError):
    pass


class NotOnCycle(PermRankError):
    pass


class PreconditionFailed(PermRankError):
    pass


class DiametricalInput(PermRankError):
    pass


class NotGenericWeights(PermRankError):
    pass


class MetricAxiomViolation(PermRankError):
    def __init__(self, axiom, points, message=None):
        self.axiom = axiom
        self.points = tuple(points)
        super().__init__(message or f"{axiom} violated at {self.points}")


class NoCaseApplies(PermRankError):
    pass


class ParseError(PermRankError):
    pass


class TiedScores(PermRankError):
    pass


class ItemSetMismatch(PermRankError):
    pass


class PseudometricWarning(UserWarning):
    """Weight matrix has a zero entry, so the distance is only a pseudometric."""
