"""Exception types shared across the package."""


class GreatCircleError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateCircles(GreatCircleError):
    """Two normals are equal or antipodal: they describe the same circle."""


class PointOffCircle(GreatCircleError):
    """A point handed to a circle operation does not lie on that circle."""


class CoincidentPoints(GreatCircleError):
    """Two points that must be distinct coincide within tolerance."""


class TooFewCircles(GreatCircleError):
    """Fewer circles than the operation supports (the minimum is 3)."""


class UnknownFixture(GreatCircleError):
    """No built-in arrangement with the requested name."""


class NotSimple(GreatCircleError):
    """Three or more circles pass through a common point."""


class CorruptRotation(GreatCircleError):
    """Face tracing revisited a directed edge: the rotation system is broken."""


class IncompleteColoring(GreatCircleError):
    """A total coloring was required but some vertex is unassigned."""


class TooLarge(GreatCircleError):
    """Instance exceeds the hard size guard of an exhaustive operation."""


class VertexNotInPair(GreatCircleError):
    """Kempe flip started at a vertex colored with neither swap color."""


class MismatchedK(GreatCircleError):
    """Isomorphism claim needs two instances with the same circle count."""


class ArrangementFormatError(GreatCircleError):
    """Malformed arrangement, DIMACS, or coloring file."""
