"""Exception hierarchy shared by every module."""


class PsiOrthoError(Exception):
    """Base class for all library errors."""


class DomainError(PsiOrthoError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation hits a pole (Gamma pole, vanishing Pochhammer denominator)."""


class NonIntegrableError(DomainError):
    """A singular weight is paired with functions that do not cancel the singularity."""


class CaseError(DomainError):
    """The parameter triple belongs to a different discriminant case."""


class EvaluationError(PsiOrthoError, ArithmeticError):
    """An integrand returned a non-finite value."""


class AccuracyError(PsiOrthoError, ArithmeticError):
    """Quadrature did not reach its tolerance within the node budget."""

    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class InternalConsistencyError(PsiOrthoError, AssertionError):
    """A quantity that must vanish analytically did not (e.g. imaginary parts)."""
