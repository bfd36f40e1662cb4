"""Exception hierarchy shared by all modules."""


class ZetasumError(Exception):
    """Base class for all library errors."""


class ValidationError(ZetasumError):
    """A data file or constructed object failed an exact validation check."""


class NotTotallyReal(ValidationError):
    pass


class NotAnOrder(ValidationError):
    pass


class DiscMismatch(ValidationError):
    pass


class FieldMismatch(ZetasumError):
    pass


class ZeroIdeal(ZetasumError):
    pass


class NotIntegral(ZetasumError):
    pass


class NotAUnit(ValidationError):
    pass


class Dependent(ValidationError):
    pass


class RegulatorMismatch(ValidationError):
    pass


class NotQuadratic(ZetasumError):
    pass


class OrderExceedsBound(ZetasumError):
    pass


class NotTotallyPositive(ZetasumError):
    pass


class NotPrincipal(ZetasumError):
    pass


class KOutOfRange(ZetasumError):
    pass


class CutTooSmall(ZetasumError):
    pass


class DegreeMismatch(ZetasumError):
    pass


class PrecisionExhausted(ZetasumError):
    """A certified comparison could not be decided below the precision cap."""


class InfeasibleEnumeration(ZetasumError):
    """A complete enumeration would exceed the configured work budget.

    Raised instead of silently running an enumeration whose candidate count
    is astronomically large (this happens for unit groups with very large
    regulators, where a fundamental domain cannot fit in any floating box).
    """
