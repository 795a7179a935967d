"""Exception hierarchy shared by every module."""


class WhitneyError(Exception):
    """Base class for all package errors."""


# poset construction / queries
class PosetError(WhitneyError):
    pass


class NotGraded(PosetError):
    pass


class NoUniqueMinimum(PosetError):
    pass


class NoUniqueMaximum(PosetError):
    pass


class CycleDetected(PosetError):
    pass


class NotTransitivelyReduced(PosetError):
    pass


class NotComparable(PosetError):
    pass


class NotGeometric(PosetError):
    pass


class RankMismatch(PosetError):
    pass


class SizeLimit(WhitneyError):
    pass


# labelings
class LabelingError(WhitneyError):
    pass


class MissingLabel(LabelingError):
    pass


class SwitchingViolation(LabelingError):
    pass


class NotWhitneyLabeling(LabelingError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotCW(NotWhitneyLabeling):
    pass


# combinatorial objects
class CrossingLabelSets(WhitneyError):
    pass


class NonDisjoint(WhitneyError):
    pass


class NotDecreasing(WhitneyError):
    pass


class StrategyMismatch(WhitneyError):
    """Normal-form keying and union-find disagree on the exchange classes."""
