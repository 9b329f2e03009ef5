"""Exception types raised across the package."""


class InscribedError(ValueError):
    """Base class for all domain errors."""


class CurveError(InscribedError):
    """The curve violates a Jordan-curve hypothesis."""


class TooFewSamples(CurveError):
    pass


class DegenerateVelocity(CurveError):
    pass


class SelfIntersecting(CurveError):
    pass


class BadN(InscribedError):
    pass


class NonpositiveRatio(InscribedError):
    pass


class SamePair(InscribedError):
    pass


class DegenerateDiagonal(InscribedError):
    pass


class FamilyMismatch(InscribedError):
    """Diagonal angle is not close to any multiple of pi/n."""


class SingularJacobian(InscribedError):
    pass


class NoConvergence(InscribedError):
    pass


class NotUnitModulus(InscribedError):
    pass


class EpsilonTooLarge(InscribedError):
    pass


class BasePointOnLoop(InscribedError):
    pass
