"""Exception hierarchy shared by all modules."""


class IFBError(Exception):
    """Base class for every error raised by this package."""


class RankDeficientError(IFBError, ValueError):
    """Columns that were required to be independent are not."""


class SingularMatrixError(IFBError, ValueError):
    pass


class NotPointedError(IFBError, ValueError):
    """The cone contains a line; no strict separator exists."""


class InfiniteBasisError(IFBError):
    """The set has no finite integral basis.

    ``witness_ray`` is an extreme ray of the recession cone that contains
    no point of the polyhedron.
    """

    def __init__(self, message, witness_ray):
        super().__init__(message)
        self.witness_ray = tuple(witness_ray)


class EmptySetError(IFBError):
    """The lattice-point set is empty."""


class InfeasiblePointError(IFBError, ValueError):
    """A candidate solution violates a constraint.

    ``constraint`` is ``("row", i)`` for a violated equation ``(Az)_i = b_i``
    or ``("nonneg", k)`` for a negative coordinate.
    """

    def __init__(self, message, constraint):
        super().__init__(message)
        self.constraint = constraint


class PreconditionError(IFBError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class CapExceededError(IFBError, ValueError):
    """An instance exceeds a desk-scale size cap."""
