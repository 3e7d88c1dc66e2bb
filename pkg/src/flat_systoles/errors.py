"""Exception hierarchy shared by all modules."""


class FlatSystolesError(Exception):
    """Base class for library errors."""


class ParseError(FlatSystolesError, ValueError):
    pass


class NotABijection(FlatSystolesError, ValueError):
    pass


class Disconnected(FlatSystolesError, ValueError):
    pass


class NotPrimitive(FlatSystolesError, ValueError):
    pass


class NoSingularities(FlatSystolesError):
    """The origami has no cone point, so its saddle-connection graph is empty."""


class GenusOne(NoSingularities):
    """Raised by the systole pipeline for flat tori."""


class EmptyGraph(FlatSystolesError):
    pass


class MissingAnchors(FlatSystolesError):
    """An edge lacks the angular endpoint data needed for angle computations."""


class NotReduced(FlatSystolesError, ValueError):
    pass


class EmptyStratum(FlatSystolesError, ValueError):
    pass


class InsufficientDirectionSet(FlatSystolesError):
    pass


class InvalidCut(FlatSystolesError, ValueError):
    pass

