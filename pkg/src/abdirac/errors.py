"""Exception hierarchy.

Anything deriving from :class:`DomainError` means the caller asked for a
point outside the physical parameter space; the CLI maps these to exit
status 1.  Everything else is treated as an internal failure.
"""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class IntegerFluxError(DomainError):
    """Flux parameter is (numerically) an integer."""


class NoBoundStateError(DomainError):
    """The extension parameter admits no bound state."""


class NoCrossingError(DomainError):
    """The particle level never crosses E = 0 on the searched interval."""


class NotNormalizableError(DomainError):
    """Spinor is not square integrable (continuum state)."""


class ConvergenceError(RuntimeError):
    """An iterative method failed to reach its tolerance."""
