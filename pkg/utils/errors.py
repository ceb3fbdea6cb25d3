# errors.py: Exception hierarchy of the presorted geometry engine.
# Every error is a ValueError so callers can keep catching ValueError at the boundaries.


class PresortGeomError(ValueError):
    """Base class for all errors raised by the engine."""


class NotSorted(PresortGeomError):
    """A presorting array violates strict coordinate order."""


class PermutationMismatch(PresortGeomError):
    """a_x[i] and a_y[pi[i]] do not denote the same point, or pi is not a bijection."""


class DuplicateCoordinate(PresortGeomError):
    """Two points share an x- or a y-coordinate."""


class DegenerateResolution(PresortGeomError):
    """A square midline collapsed onto one of its edges in float arithmetic."""


class SizeOverflow(PresortGeomError):
    """A lookup table would exceed the configured memory cap."""


class DivisionByZero(PresortGeomError):
    """Word division by zero."""


class DuplicateRank(PresortGeomError):
    """Two rank points share an x-rank or a y-rank."""


class Collinear(PresortGeomError):
    """Three input points are collinear where general position is required."""


class TooFew(PresortGeomError):
    """Not enough points for the requested construction."""


class InfeasiblePlacement(PresortGeomError):
    """A family generator could not place a point inside its feasible region."""


class EpsTooLarge(PresortGeomError):
    """The k-pair family epsilon would let cross-pair distances undercut intra-pair ones."""


class ValueSeparationViolated(PresortGeomError):
    """Gap family values closer than one unit apart."""


class DegenerateHull(PresortGeomError):
    """The convex hull has no interior (fewer than three points or all collinear)."""


class InvalidParams(PresortGeomError):
    """A command or generator received parameters outside its domain."""


class InputFileError(PresortGeomError):
    """An input file could not be read or parsed."""
