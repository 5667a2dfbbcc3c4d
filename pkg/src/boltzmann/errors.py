"""Exception types raised by the billiard library."""


class BoltzmannError(ValueError):
    """Base class for every domain error in this package."""


class DegenerateTangency(BoltzmannError):
    """The Kepler conic is tangent to the wall (|A1| = 1), no second crossing."""


class DegenerateArc(BoltzmannError):
    """The arc collapses to a radial segment (L^2 = 0).

    ``segment`` holds the two endpoints of that segment.
    """

    def __init__(self, message, segment=None):
        super().__init__(message)
        self.segment = segment


class UnboundedMotion(BoltzmannError):
    """Energy is non-negative, so the arc is not an ellipse."""


class SingularParameters(BoltzmannError):
    """(E, D) violates one of the regularity conditions.

    ``condition`` names the violated condition.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class OutsideRegion(BoltzmannError):
    """(E, D) does not correspond to bounded real motion."""


class UnsupportedPeriod(BoltzmannError):
    pass


class ZeroConstantTerm(BoltzmannError):
    pass


class DegenerateTangencyGeometry(BoltzmannError):
    """A denominator of the tangency formulas vanishes."""


class PreconditionViolated(BoltzmannError):
    pass


class NotSingular(BoltzmannError):
    pass


class UnsupportedEnergy(BoltzmannError):
    pass


class NoSignChange(BoltzmannError):
    pass


class AdmissibleSampleNotFound(BoltzmannError):
    pass
