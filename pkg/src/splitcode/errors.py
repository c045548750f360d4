"""Exception hierarchy shared by every splitcode module."""


class SplitcodeError(Exception):
    pass


class MalformedPartition(SplitcodeError, ValueError):
    """Groups (and stem) do not partition the point set."""


class Inadmissible(SplitcodeError, ValueError):
    """Parameters fail a necessary existence condition."""


class NotAdmissible(Inadmissible):
    """A family builder was asked for a member it does not construct."""


class InadmissibleOrder(Inadmissible):
    pass


class NotPrime(SplitcodeError, ValueError):
    pass


class NoIrreducibleFound(SplitcodeError, RuntimeError):
    pass


class UnsupportedOrder(SplitcodeError, ValueError):
    pass


class UnsupportedClass(SplitcodeError, ValueError):
    pass


class CannotSupplyMols(SplitcodeError):
    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)


class IngredientFailure(SplitcodeError):
    """An ingredient could not be produced."""


class AdmissibleButNotFound(IngredientFailure):
    pass


class BudgetExhausted(IngredientFailure):
    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = dict(stats or {})


class CorruptEntry(SplitcodeError):
    pass


class IngredientShapeMismatch(SplitcodeError, ValueError):
    pass


ShapeMismatch = IngredientShapeMismatch


class EmptyStem(SplitcodeError, ValueError):
    pass


class StemTooLarge(SplitcodeError, ValueError):
    pass


class MissingFiller(SplitcodeError, KeyError):
    def __init__(self, size):
        super().__init__(f"no filler supplied for group size {size}")
        self.size = size

    def __str__(self):
        return self.args[0]


class InvalidDesign(SplitcodeError, ValueError):
    pass


class NonUniformSplitting(SplitcodeError, ValueError):
    pass


class TooLargeForExact(SplitcodeError):
    pass


class VerificationFailed(SplitcodeError, AssertionError):
    """A constructed object failed its own verifier; this is a bug, not bad input."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
