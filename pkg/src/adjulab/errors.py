"""Exception hierarchy shared by every adjulab module."""


class AdjulabError(Exception):
    """Base class for all library errors."""


class DivisionByZero(AdjulabError, ZeroDivisionError):
    pass


class FieldMismatch(AdjulabError, TypeError):
    pass


class ParseError(AdjulabError, ValueError):
    pass


class DegreeCapExceeded(AdjulabError):
    """Factorization over Q was asked for a component above the degree cap."""


class NotSquare(AdjulabError, ValueError):
    pass


class NotMonic(AdjulabError, ValueError):
    pass


class NotAnEigenvalue(AdjulabError, ValueError):
    pass


class NotEigenvector(AdjulabError, ValueError):
    pass


class NotSingular(AdjulabError, ValueError):
    pass


class SingularMatrix(AdjulabError, ValueError):
    pass


class Unsolvable(AdjulabError, ValueError):
    pass


class AmbiguousPairing(AdjulabError):
    """The chain pairing depends on the chosen solution (precondition broken)."""


class GeometricMultiplicityTooHigh(AdjulabError, ValueError):
    pass


class GeometricMultiplicityNotOne(AdjulabError, ValueError):
    pass


class HypothesisViolated(AdjulabError, ValueError):
    def __init__(self, which, message=None):
        self.which = which
        super().__init__(message or f"hypothesis violated: {which}")


class NotSimple(AdjulabError, ValueError):
    pass


class InnerProductUnderflow(AdjulabError):
    pass


class NoConvergence(AdjulabError, RuntimeError):
    pass


class RootCrossing(AdjulabError, RuntimeError):
    pass


class VerificationError(AdjulabError, AssertionError):
    """A formula disagreed with its oracle. Never expected on a correct build."""


class InvariantViolation(VerificationError):
    """A structural identity (A Adj(A) = det(A) I, Smith chain) failed."""
