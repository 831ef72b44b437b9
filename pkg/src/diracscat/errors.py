"""Exception hierarchy.

Validation errors map to CLI exit code 2, numerical failures to exit code 3.
"""


class DiracScatError(Exception):
    """Base class for all package errors."""


class ValidationError(DiracScatError, ValueError):
    """Input does not satisfy a documented precondition."""


class ProfileError(ValidationError):
    """Malformed or inconsistent potential profile."""


class DomainError(ValidationError):
    """Argument outside the domain of a function."""


class RegionError(ValidationError):
    """Energy lies in the wrong region for the requested quantity."""


class TailNotConvergedError(ValidationError):
    """Tail tolerance cannot be met inside the maximum truncation range."""


class InconclusiveRootError(ValidationError):
    """A turning point sits on the truncation boundary."""


class SingularPointError(ValidationError):
    """Evaluation at a turning point."""


class PathCrossesTurningPointError(ValidationError):
    """An integration path to infinity crosses a turning point."""


class HypothesisError(ValidationError):
    """Turning-point structure differs from what a formula assumes."""


class DegenerateChannelError(ValidationError):
    """Energy sits exactly on a local band edge of a constant slab."""


class NumericalError(DiracScatError, ArithmeticError):
    """A computation could not reach its accuracy target."""


class PrecisionError(NumericalError):
    """Dynamic range exceeds the configured working precision."""


class ResolutionError(NumericalError):
    """Step count needed to resolve the oscillations exceeds the budget."""


class IntegrationQualityError(NumericalError):
    """Wronskian drift across the grid exceeds tolerance."""
