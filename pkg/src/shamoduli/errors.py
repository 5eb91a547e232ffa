"""Exception hierarchy.

Every error raised on a violated precondition derives from
:class:`PreconditionError`; the CLI maps those to exit status 2 and
:class:`BudgetExceeded` to exit status 3.
"""


class ShaModuliError(Exception):
    """Base class for all package errors."""


class PreconditionError(ShaModuliError, ValueError):
    """An input violated the documented precondition of an operation."""


class InternalInvariantError(ShaModuliError, RuntimeError):
    """Raised when a mathematically guaranteed invariant fails; indicates a bug."""


class BudgetExceeded(ShaModuliError):
    """An enumeration exceeded its node budget."""


# projgeom
class ProportionalLines(PreconditionError):
    pass


class TooFewPoints(PreconditionError):
    pass


class DegenerateBasePoints(PreconditionError):
    pass


class BadIndexSize(PreconditionError):
    pass


class BasePointOnSpecialLine(PreconditionError):
    pass


# weights
class LengthMismatch(PreconditionError):
    pass


class EndpointOnWall(PreconditionError):
    pass


class BadN(PreconditionError):
    pass


class NoChainFound(InternalInvariantError):
    pass


# sha
class UnstableReplacement(PreconditionError):
    pass


class NotDestabilized(PreconditionError):
    pass


class InvalidSha(PreconditionError):
    pass


# wonderful
class EmptyIntersection(PreconditionError):
    pass


class DimensionUnderflow(PreconditionError):
    pass


class FirstWeightNotOne(PreconditionError):
    pass


# chow
class NonGenericConditions(PreconditionError):
    pass


class NotMaximallyDegenerate(PreconditionError):
    pass


class DegenerateInput(PreconditionError):
    pass


class NoContributor(InternalInvariantError):
    pass


class MultipleContributors(InternalInvariantError):
    pass
