"""Exception hierarchy shared by every module of the package."""


class BeliefError(ValueError):
    """Base class for all invalid-input conditions raised by cogindep."""


class NonUnitSumError(BeliefError):
    pass


class NegativeMassError(BeliefError):
    pass


class DuplicateSubsetError(BeliefError):
    pass


class SubsetOutOfRangeError(BeliefError):
    pass


class FrameMismatchError(BeliefError):
    pass


class EmptyListError(BeliefError):
    pass


class EmptyConditionerError(BeliefError):
    pass


class FocalOutsideConditionerError(BeliefError):
    pass


class AlphaOutOfRangeError(BeliefError):
    pass


class TotalConflictError(BeliefError):
    """Raised when m(empty set) == 1 makes the pignistic transform undefined."""


class EmptyClusterError(BeliefError):
    pass


class TooFewObjectsError(BeliefError):
    pass


class PartitionMismatchError(BeliefError):
    pass


class LengthMismatchError(BeliefError):
    pass


class NotADerangementError(BeliefError):
    pass
