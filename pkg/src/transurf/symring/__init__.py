"""Exact differential-ring arithmetic used by the elimination pipeline."""
from .ratexpr import (
    GENERATORS,
    A,
    A1,
    A2,
    A3,
    T,
    T1,
    T2,
    GeneratorOverflowError,
    LocalizationError,
    RatExpr,
    SymringError,
    ratexpr,
)
from .radical import ONE, X_POLY, Z, ZERO, CotPair, RadFrac, ZPoly, cot_free, d_u


def coeff(x: ZPoly, k: int) -> RatExpr:
    """Coefficient of z^k (zero past the degree; ValueError for k < 0)."""
    return x.coeff(k)


def is_zero(x) -> bool:
    return x.is_zero()


LOG_DERIV = A1 / A
SIGMA = 2 * LOG_DERIV**2 - LOG_DERIV.derivative()

__all__ = [
    "GENERATORS", "A", "A1", "A2", "A3", "T", "T1", "T2",
    "GeneratorOverflowError", "LocalizationError", "SymringError",
    "RatExpr", "ratexpr", "ZPoly", "RadFrac", "CotPair", "d_u", "cot_free",
    "coeff", "is_zero", "ONE", "ZERO", "Z", "X_POLY", "LOG_DERIV", "SIGMA",
]
