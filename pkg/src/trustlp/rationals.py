"""Parsing and formatting of exact rational numbers.

All user-facing numbers are exact rationals rendered as ``a/b`` (or a plain
integer when the denominator is 1). Accepted input forms: ``a/b``, integers,
and finite decimals such as ``0.5``.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?(\d+/\d+|\d+\.\d+|\.\d+|\d+)$")

RationalLike = Fraction | int | str


def parse_rational(text: str) -> Fraction:
    """Parse ``a/b``, an integer, or a finite decimal into a Fraction.

    Raises ValueError for anything else (including zero denominators).
    """
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ValueError(f"not a rational number: {text!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce int/str/Fraction inputs to Fraction, rejecting floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Render in lowest terms: ``3/2``, ``-1/10``, or ``7`` when integral."""
    return str(value)
