"""Exception hierarchy shared by every module.

Each error carries an ``exit_code`` used by the command line front end.
"""


class QPRankError(Exception):
    exit_code = 1


class InputError(QPRankError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(InputError):
    pass


class FrozenVertex(InputError):
    pass


class TwoCycleAtVertex(InputError):
    pass


class AugmentationInsufficient(InputError):
    pass


class RankDeficient(QPRankError):
    pass


class NonIntegralSolution(QPRankError):
    pass


class NegativeDimension(QPRankError):
    pass


class BadPrime(InputError):
    pass


class FinitenessUndetermined(QPRankError):
    exit_code = 5


class ReductionDiverged(QPRankError):
    pass


class NonSplitQuadratic(QPRankError):
    pass


class NotAcyclic(InputError):
    pass


class SearchExhausted(QPRankError):
    exit_code = 3


class InconclusiveGenerics(QPRankError):
    exit_code = 4


class OracleMismatch(QPRankError):
    exit_code = 4


class VariantMismatch(QPRankError):
    pass


class DualOpInconsistency(QPRankError):
    pass


class RigidityFailed(QPRankError):
    pass


class TooLarge(QPRankError):
    pass
