"""Exact rational scalars.

Every number in the engine is a ``fractions.Fraction``; no floating-point
value is ever constructed.  The standard library keeps fractions in lowest
terms with a positive denominator, which is exactly the invariant the rest
of the package relies on.
"""
from __future__ import annotations

import math
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_scalar(value) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = as_scalar(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(text: str) -> Fraction:
    return Fraction(text)


def recip_factorial(n: int) -> Fraction:
    """1/n!, extended by 0 for negative arguments (a total function)."""
    if n < 0:
        return ZERO
    return Fraction(1, math.factorial(n))
