"""Exception hierarchy shared by all mininfer modules."""


class MininferError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(MininferError, ValueError):
    pass


class NotHermitianError(MininferError, ValueError):
    pass


class DomainError(MininferError, ValueError):
    pass


class NoConvergenceError(MininferError, RuntimeError):
    pass


class InvalidStateError(MininferError, ValueError):
    pass


class InvalidDistributionError(MininferError, ValueError):
    pass


class DependentObservablesError(MininferError, ValueError):
    pass


class InfeasibleError(MininferError):
    """The constraint means cannot be reproduced by any density matrix."""


class BoundaryMeansError(MininferError):
    """Target means lie on the boundary of the achievable set.

    No finite set of multipliers reproduces them.  ``result`` carries the
    limit state computed on the supporting face, when it could be found.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotBellConstraintsError(MininferError, ValueError):
    pass


class OutOfRangeError(MininferError, ValueError):
    pass


class NoSignChangeError(MininferError, ValueError):
    pass


class ConsistencyError(MininferError, RuntimeError):
    """Two routes that must agree produced different answers."""


class ConstraintSyntaxError(MininferError, ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
