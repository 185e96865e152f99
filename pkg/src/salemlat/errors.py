"""Exception hierarchy shared by every module."""


class SalemLatError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(SalemLatError, ValueError):
    pass


class NotMonic(SalemLatError, ValueError):
    pass


class NotReciprocal(SalemLatError, ValueError):
    pass


class OddDegree(SalemLatError, ValueError):
    pass


class NotSalem(SalemLatError, ValueError):
    pass


class DimensionMismatch(SalemLatError, ValueError):
    pass


class NotFormPreserving(SalemLatError, ValueError):
    """Raised when M^T G M != G; carries the first offending entry."""

    def __init__(self, message, entry=None, got=None, expected=None):
        super().__init__(message)
        self.entry = entry
        self.got = got
        self.expected = expected


class NotUnimodular(SalemLatError, ValueError):
    pass


class NotNegativeDefinite(SalemLatError, ValueError):
    pass


class NoSalemFactor(SalemLatError, ValueError):
    pass


class UnexpectedFactor(SalemLatError, ValueError):
    """Characteristic polynomial is not (cyclotomics) x (at most one Salem)."""


class ZeroEntropy(SalemLatError, ValueError):
    pass


class BadReference(SalemLatError, ValueError):
    pass


class NotDiagonalizable(SalemLatError, ValueError):
    pass


class CandidatesDegenerate(SalemLatError, ValueError):
    pass


class UnknownName(SalemLatError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class NoConvergence(SalemLatError, ArithmeticError):
    pass


class ZeroLimit(NoConvergence):
    """Iteration converged to the zero vector (start had no dominant component)."""
