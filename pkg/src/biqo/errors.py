"""Exception types raised across the package."""


class BiqoError(Exception):
    """Base class for all errors raised by biqo."""


class DimensionError(BiqoError, ValueError):
    pass


class NotHermitianError(BiqoError, ValueError):
    pass


class NotDensityError(BiqoError, ValueError):
    pass


class DomainError(BiqoError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class IndistinguishableError(BiqoError, ValueError):
    pass


class InformationBoundError(BiqoError, ValueError):
    """Requested eavesdropper error is below the Helstrom limit."""


class RankDeficiencyError(BiqoError, ValueError):
    pass


class NonFiniteError(BiqoError, ArithmeticError):
    pass
