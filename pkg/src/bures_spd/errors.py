"""Exception types raised across the package."""


class BuresError(ValueError):
    """Base class for every error raised by :mod:`bures_spd`."""


class DimensionError(BuresError):
    """Operands are not square or their sizes do not match."""


class NotSPDError(BuresError):
    """A matrix failed the symmetric positive-definite gate."""


class NumericError(BuresError):
    """A numerical routine produced a result outside its tolerance.

    Parameters
    ----------
    message : str
        Human readable description.
    residual : float, optional
        The offending residual, when one is available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegeneracyError(BuresError):
    """A lift, section or projection is degenerate."""


class DomainError(BuresError):
    """A geodesic parameter lies outside the maximal extension.

    The maximal extension ``eps_max`` of the offending ray is attached so
    callers can clamp or re-parameterize.
    """

    def __init__(self, message, eps_max):
        super().__init__(message)
        self.eps_max = eps_max
