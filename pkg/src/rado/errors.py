"""Exception types shared across the package."""


class RadoError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RadoError, ValueError):
    """A parameter is outside the range an operation is defined for."""


class FractionalPowerNotAPower(RadoError):
    """A fractional-power instance contains a value that is not a perfect
    ell-th power.  Such tuples are refused rather than classified: nothing
    guarantees their irrational reciprocal roots cannot cancel."""


class SetTooLarge(RadoError):
    """Input set exceeds the configured enumeration limit."""


class BudgetExceeded(RadoError):
    """A node, time, or solution budget ran out before completion."""


class EdgeOutsideDomain(RadoError):
    """A hyperedge mentions a value missing from the coloring domain."""


class CapExceeded(RadoError):
    """The brute-force cap on the number of colorings was exceeded."""


class NotAWitness(RadoError):
    """The set offered for an upper-bound certificate admits a coloring
    with no monochromatic solution; carries that counterexample."""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
