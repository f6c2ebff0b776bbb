"""Exception types shared across the package.

Everything derives from Pinch4Error so callers can catch the whole family
with one clause.  Each class corresponds to a specific precondition
violation; the raising site puts the offending value in the message.
"""


class Pinch4Error(ValueError):
    """Base class for all errors raised by this package."""


class NonTraceless(Pinch4Error):
    """Weyl eigenvalue triple does not sum to zero."""


class BadDelta(Pinch4Error):
    """Pinching constant outside the admissible range."""


class DegenerateDelta(Pinch4Error):
    """delta at which the requested polytope collapses."""


class NonPositiveLambda(Pinch4Error):
    """lambda must be positive."""


class EtaOutOfRange(Pinch4Error):
    """eta must lie in [-1, 1]."""


class NonUnitPlane(Pinch4Error):
    """Plane spanning vectors are not unit length."""


class NotAFace(Pinch4Error):
    """Index set is not a face of the given polytope."""


class DimensionMismatch(Pinch4Error):
    """Quadratic form and polytope live in different ambient spaces."""


class NoSignChange(Pinch4Error):
    """Bisection bracket has the same predicate value at both ends."""


class NegativeEntry(Pinch4Error):
    """Eigenvalue list contains a negative entry where nonnegative required."""


class NotSorted(Pinch4Error):
    """Eigenvalue list is not in ascending order."""


class OutOfDomain(Pinch4Error):
    """Argument outside the domain of the requested curve branch."""


class BadParameter(Pinch4Error):
    """Invalid or missing parameter for a geography bound."""


class EmptyRegion(Pinch4Error):
    """Constraint set has no feasible point."""


class StuckSampler(Pinch4Error):
    """Markov chain acceptance rate collapsed; sampling aborted."""


class ResolutionTooLarge(Pinch4Error):
    """Requested grid would exceed the evaluation budget."""
