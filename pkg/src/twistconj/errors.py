"""Exception hierarchy shared by every module."""


class TwistConjError(Exception):
    """Base class for all library errors."""


class ParseError(TwistConjError, ValueError):
    pass


class InvalidRingSpec(TwistConjError, ValueError):
    pass


class RingMismatch(TwistConjError, TypeError):
    pass


class DimensionMismatch(TwistConjError, ValueError):
    pass


class NotInvertibleOverRing(TwistConjError, ArithmeticError):
    pass


class NonSeparatingPolynomial(TwistConjError, ValueError):
    pass


class BudgetExhausted(TwistConjError, RuntimeError):
    pass


class DomainError(TwistConjError, KeyError):
    pass


class NotAutomorphism(TwistConjError, ValueError):
    pass


class TooLarge(TwistConjError, RuntimeError):
    pass


class NotDeltaFixed(TwistConjError, ValueError):
    pass


class ShapeViolation(TwistConjError, ValueError):
    pass


class RingNotInfinite(TwistConjError, ValueError):
    pass


class DimensionTooSmall(TwistConjError, ValueError):
    pass


class UnknownOrder(TwistConjError, ValueError):
    pass


class InexactDivision(TwistConjError, ArithmeticError):
    pass
