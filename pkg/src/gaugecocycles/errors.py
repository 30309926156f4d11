"""Exception types raised across the package."""


class GaugeCocycleError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(GaugeCocycleError, ValueError):
    pass


class NotSemisimple(GaugeCocycleError, ValueError):
    pass


class IrrationalSplit(GaugeCocycleError, ValueError):
    """A minimal-polynomial factor whose ideals are not rational subspaces."""


class NotAnAutomorphism(GaugeCocycleError, ValueError):
    pass


class TwistMismatch(GaugeCocycleError, ValueError):
    """Loop elements from different loop algebras, or a section violating its twist."""


class MonodromyMismatch(GaugeCocycleError, ValueError):
    """A covector on V that is not invariant under the monodromy."""


class ParseError(GaugeCocycleError, ValueError):
    pass


class UnknownTwist(GaugeCocycleError, KeyError):
    pass
