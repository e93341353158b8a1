"""Exception types shared across the library."""


class Ofc2dError(Exception):
    """Base class for all library errors."""


class OutOfBounds(Ofc2dError):
    """A segment or point leaves the declared bounding box."""


class OverlappingSegments(Ofc2dError):
    """Two input segments properly cross or overlap collinearly."""


class PointOutsideBBox(Ofc2dError):
    """Query point is not inside the structure's bounding box."""


class InvalidFanout(Ofc2dError):
    """Range-tree fan-out parameter below 2."""


class InvalidParameter(Ofc2dError):
    """A numeric parameter is outside its allowed range."""


class RetryExhausted(Ofc2dError):
    """Randomized construction failed verification too many times.

    This signals a bug (or an invalid input), not bad luck.
    """


class HeightOutOfRegime(Ofc2dError):
    """Catalog tree height violates the structure's regime bound."""


class InvalidHeights(Ofc2dError):
    """h1/h2 window parameters are inconsistent."""


class InvalidRounds(Ofc2dError):
    """Bootstrap round count is negative."""


class NotRootToLeaf(Ofc2dError):
    """Query path is not exactly a root-to-leaf path."""


class VertexNotOnPath(Ofc2dError):
    """A queried vertex does not belong to the catalog path."""


class PathOutOfRegime(Ofc2dError):
    """Query path length outside the structure's supported window."""


class PathTooShort(Ofc2dError):
    """Query path too short for the long-path structure; use the dispatcher."""


class DisconnectedSubgraph(Ofc2dError):
    """Subgraph query names a vertex set that is not connected."""


class UnknownVertex(Ofc2dError):
    """A query references a vertex id that does not exist."""


class InfeasibleParams(Ofc2dError):
    """Adversarial-instance parameters violate the feasibility inequality."""


class ParseError(Ofc2dError):
    """Malformed instance or query file.

    Carries the offending path and 1-based line number.
    """

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno
