"""Exception hierarchy shared by every module of the package."""


class GSCError(ValueError):
    """Base class for all errors raised by :mod:`gsc`."""


class InvalidWeight(GSCError):
    pass


class ShapeMismatch(GSCError):
    pass


class InvalidParameter(GSCError):
    pass


class DegenerateMeasure(GSCError):
    pass


class DegenerateFunction(GSCError):
    pass


class InvalidSets(GSCError):
    pass


class InvalidPartition(GSCError):
    pass


class NotSymmetric(GSCError):
    pass


class ParseError(GSCError):
    pass


class NotConverged(GSCError):
    """Iterative solver stopped before reaching its tolerance.

    The last residual is kept on the instance so callers can decide
    whether the approximation is still usable.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual
