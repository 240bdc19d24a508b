"""Exception types raised across the package."""

from __future__ import annotations


class SedgeoError(Exception):
    """Base class for every error raised by this package."""


class NotRepresentable(SedgeoError, ValueError):
    """A square root does not lie in Q(sqrt2, sqrt3)."""


class DegreeOverflow(SedgeoError, ValueError):
    """Product of two r-dependent affine coefficients."""


class LevelMismatch(SedgeoError, ValueError):
    pass


class ZeroInput(SedgeoError, ValueError):
    pass


class BracketNotInSpan(SedgeoError):
    """A commutator of basis matrices left the span of the basis."""


class DegenerateMetric(SedgeoError, ValueError):
    pass


class IsotropyMismatch(SedgeoError, ValueError):
    pass


class NotDiagonal(SedgeoError, ValueError):
    pass


class NonAffineInR(SedgeoError):
    """Three samples of an r-dependent quantity are not collinear."""


class NotSymmetric(SedgeoError, ValueError):
    pass


class NotPsd(SedgeoError, ValueError):
    pass


class IdentityMismatch(SedgeoError):
    """A Gram identity F = x^T H x failed; carries the first bad monomial."""

    def __init__(self, message: str, monomial=None, expected=None, actual=None):
        super().__init__(message)
        self.monomial = monomial
        self.expected = expected
        self.actual = actual


class ParseError(SedgeoError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
