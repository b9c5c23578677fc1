"""Exception hierarchy shared by every module of the package."""


class QuadrelError(Exception):
    """Base class for all package errors."""


class ReducibleModulus(QuadrelError, ValueError):
    pass


class BadDegree(QuadrelError, ValueError):
    pass


class DivisionByZero(QuadrelError, ZeroDivisionError):
    pass


class DuplicateAbscissa(QuadrelError, ValueError):
    pass


class DimensionMismatch(QuadrelError, ValueError):
    pass


class Exhausted(QuadrelError, RuntimeError):
    """A randomized search ran out of its trial budget."""


class RankDeficient(QuadrelError, ValueError):
    pass


class BadParams(QuadrelError, ValueError):
    pass


class SingularMatrix(QuadrelError, ValueError):
    pass


class BadIndices(QuadrelError, ValueError):
    pass


class ConflictingAssignment(QuadrelError, ValueError):
    pass


class Inconsistent(QuadrelError, RuntimeError):
    """The polynomial system has no solution over the base field."""


class TooManySolutions(QuadrelError, RuntimeError):
    pass


class NotFound(QuadrelError, RuntimeError):
    def __init__(self, message, attempts=()):
        super().__init__(message)
        self.attempts = list(attempts)


class DegenerateKernels(QuadrelError, RuntimeError):
    pass


class NoCleanCodeword(QuadrelError, RuntimeError):
    pass


class NotGRS(QuadrelError, ValueError):
    pass


class VerificationFailed(QuadrelError, RuntimeError):
    pass


class PoleHit(QuadrelError, ValueError):
    def __init__(self, index):
        super().__init__(f"denominator vanishes at support position {index}")
        self.index = index


class ParseError(QuadrelError, ValueError):
    pass
