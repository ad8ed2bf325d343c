"""
Exceptions raised by banachlab
"""

from typing import Any, Optional


class BanachLabError(Exception):
    """Base class for all banachlab errors"""


class InconsistentDimensions(BanachLabError, ValueError):
    """Tensor, vector or matrix shapes do not agree with the algebra dimension"""


class AlgebraMismatch(BanachLabError, ValueError):
    """Elements from different algebras were combined"""


class NotAssociative(BanachLabError):
    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class NotSubmultiplicative(BanachLabError):
    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class InvalidIdentity(BanachLabError):
    """Supplied identity does not act as an identity or does not have norm 1"""


class Singular(BanachLabError):
    pass


class PowerIterationStalled(BanachLabError):
    pass


class NotIsometricRegularRep(BanachLabError):
    pass


class UnsupportedNormKind(BanachLabError):
    pass


class UnsupportedStateFamily(BanachLabError):
    pass


class NonConvergent(BanachLabError):
    pass


class NormTooLarge(BanachLabError):
    pass


class NotInF(BanachLabError):
    pass


class NotAccretive(BanachLabError):
    pass


class TolNotReached(BanachLabError):
    pass


class NotCommuting(BanachLabError):
    pass


class NotCommutative(BanachLabError):
    pass


class RouteDisagreement(BanachLabError):
    pass


class NotPseudoInvertible(BanachLabError):
    pass


class PoolExhausted(BanachLabError):
    def __init__(self, message: str, step: int = 0, defect: float = float("inf")):
        super().__init__(message)
        self.step = step
        self.defect = defect


class SpanMismatch(BanachLabError):
    pass


class SupportNotIdempotent(BanachLabError):
    pass


class NotMIdeal(BanachLabError):
    pass


class AlphaNotInterior(BanachLabError):
    pass


class EmptyInterior(BanachLabError):
    pass


class NotQuotientRealPositive(BanachLabError):
    pass


class BoundViolation(BanachLabError):
    """A proven inequality failed numerically"""


class ClaimFailed(BanachLabError):
    def __init__(self, case_id: str, description: str, margin: float):
        super().__init__(f"{case_id}: {description} (margin {margin:.3g})")
        self.case_id = case_id
        self.description = description
        self.margin = margin
