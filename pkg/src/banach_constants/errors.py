"""Exception hierarchy shared by every module of the package."""


class BanachError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(BanachError, ValueError):
    """Vector dimension does not match the space."""


class UnsupportedSpaceError(BanachError, ValueError):
    """Operation is not available for this space (e.g. wrong dimension)."""


class SpaceDefinitionError(BanachError, ValueError):
    """A space could not be constructed from its parameters or id string."""


class DegenerateInputError(BanachError, ValueError):
    """Input is degenerate, e.g. normalizing the zero vector."""


class DomainError(BanachError, ValueError):
    """A parameter lies outside the domain of the requested quantity."""


class InfeasibleError(BanachError):
    """The constraint set of a constrained search is empty."""


class ObjectiveError(BanachError):
    """The objective returned a non-finite value during a search.

    The offending pair is kept on ``pair`` for inspection.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair
