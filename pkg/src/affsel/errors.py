"""Exception hierarchy shared by the library and the command line."""


class AffselError(Exception):
    """Base class for all errors raised by affsel."""


class InputError(AffselError, ValueError):
    """Malformed input: wrong lengths, bad relations, unparsable rationals."""


class GeometryError(AffselError):
    """A geometric object violates its invariants (e.g. a degenerate simplex)."""


class DomainError(AffselError):
    """A point lies outside the domain of a multifunction."""


class NotInteriorError(DomainError):
    """No simplex around the point fits inside the domain.

    Raised both for boundary points and for domains that are not
    full-dimensional; the two cases are not distinguished.
    """


class UnsupportedSizeError(AffselError):
    """The instance is larger than the exact enumeration routines allow."""
