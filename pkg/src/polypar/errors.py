"""Exception hierarchy shared by every polypar module."""

from __future__ import annotations


class PolyparError(Exception):
    """Base class for all errors raised by polypar."""


class DimensionMismatch(PolyparError, ValueError):
    pass


class ZeroVector(PolyparError, ValueError):
    pass


class DegenerateNorm(PolyparError, ValueError):
    """Dual data does not span the space, so the gauge is not a norm."""


class RedundantFunctional(PolyparError, ValueError):
    """A listed dual functional is not a vertex of the dual unit ball."""

    def __init__(self, functional):
        self.functional = tuple(functional)
        super().__init__("redundant functional (%s)" % ",".join(str(c) for c in self.functional))


class CapacityExceeded(PolyparError, ValueError):
    pass


class NotInteriorPoint(PolyparError, ValueError):
    pass


class UnknownFunctional(PolyparError, ValueError):
    pass


class InvalidEpsilon(PolyparError, ValueError):
    pass


class InvalidP(PolyparError, ValueError):
    pass


class InvalidTolerance(PolyparError, ValueError):
    pass


class NotBijective(PolyparError, ValueError):
    pass


class NotPreserver(PolyparError, ValueError):
    pass


class MappingAmbiguous(PolyparError, RuntimeError):
    """Raised when a facet image is not a smooth cone; would contradict the theory."""


class PreconditionFailed(PolyparError, ValueError):
    pass


class UnsupportedDimension(PolyparError, ValueError):
    pass


class UnknownSuite(PolyparError, KeyError):
    pass


class ParseError(PolyparError, ValueError):
    """Malformed textual input; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = "%s at position %d in %r" % (message, position, text)
        super().__init__(message)


class SpaceFileError(PolyparError, ValueError):
    pass
