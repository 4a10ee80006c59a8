"""Exception hierarchy.  Every error raised by the package derives from ``SeqProdError``."""


class SeqProdError(Exception):
    pass


class ShapeMismatch(SeqProdError, ValueError):
    pass


class NotHermitian(SeqProdError, ValueError):
    pass


class NotPositive(SeqProdError, ValueError):
    pass


class NoConvergence(SeqProdError, ArithmeticError):
    pass


class NotAnEffect(SeqProdError, ValueError):
    pass


class NotProjection(SeqProdError, ValueError):
    pass


class AlgebraMismatch(SeqProdError, ValueError):
    pass


class NormTooLarge(SeqProdError, ValueError):
    pass


class NotUnital(SeqProdError, ValueError):
    pass


class Not2Positive(SeqProdError, ValueError):
    pass


class NotCompletelyPositive(SeqProdError, ValueError):
    pass


class NotMutuallyInverse(SeqProdError, ValueError):
    pass


class NotMultiplicative(SeqProdError, ValueError):
    pass


class PreconditionViolated(SeqProdError, ValueError):
    pass


class NoSolution(SeqProdError, ArithmeticError):
    pass


class NotUnimodular(SeqProdError, ValueError):
    pass


class AxiomPrereqFailed(SeqProdError):
    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class UnknownName(SeqProdError, KeyError):
    pass
