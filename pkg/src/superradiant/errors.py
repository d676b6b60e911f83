"""Exception hierarchy.

Configuration problems subclass :class:`ValueError`; everything raised
while a computation is underway subclasses :class:`NumericalError`.
"""


class SuperradiantError(Exception):
    """Base class for all package errors."""


class DomainError(SuperradiantError, ValueError):
    """An argument lies outside the domain of the requested formula."""


class NumericalError(SuperradiantError, RuntimeError):
    """A numerical procedure failed to reach its target."""


class QuadratureError(NumericalError):
    """Adaptive k-quadrature hit its panel cap before reaching abs_tol."""


class BracketError(NumericalError):
    """The stationary-point search bracket could not be made valid."""


class TransitionError(NumericalError):
    """The sweep bracket does not enclose a change of phase."""


class ContinuationError(NumericalError):
    """A followed branch of maxima was lost away from a spinodal."""


class TruncationError(NumericalError):
    """Observables are not converged in the Fock-space cutoff."""


class ResourceError(NumericalError):
    """The requested exact diagonalization exceeds the size cap."""
