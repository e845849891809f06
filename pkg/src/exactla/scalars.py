"""Exact rational scalars backed by sympy's QQ domain."""
from fractions import Fraction
from typing import Any

from sympy import Rational
from sympy.polys.domains import QQ

ExactScalar = QQ.dtype

ZERO = QQ(0)
ONE = QQ(1)


def to_scalar(value: Any) -> ExactScalar:
    """
    Convert an int, Fraction, decimal string, "p/q" string or sympy rational to QQ.

    Args:
        value: Value to convert

    Returns:
        Reduced exact rational

    Raises:
        TypeError: If the value is a float or not rational
    """
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        frac = Fraction(value.strip())
        return QQ(frac.numerator, frac.denominator)
    if isinstance(value, float):
        raise TypeError("floating point values are not exact scalars")
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    raise TypeError(f"cannot convert {value!r} to an exact scalar")


def scalar_power(base: ExactScalar, exponent: int) -> ExactScalar:
    """Integer power of an exact scalar; 0**0 is 1 and negative powers invert."""
    base = to_scalar(base)
    if exponent >= 0:
        return base ** exponent
    if base == 0:
        raise ZeroDivisionError("negative power of zero")
    return (ONE / base) ** (-exponent)


def format_scalar(value: ExactScalar) -> str:
    """Render as "p" or "p/q"."""
    value = to_scalar(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def to_fraction(value: ExactScalar) -> Fraction:
    value = to_scalar(value)
    return Fraction(int(value.numerator), int(value.denominator))
