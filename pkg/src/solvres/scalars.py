"""Exact rational coefficients.

Coefficients are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator (zero is ``0/1``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


def add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def inverse(a: Fraction) -> Fraction:
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return 1 / Fraction(a)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` with an optional leading sign.

    Non-canonical input such as ``2/4`` is accepted and reduced.
    """
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}")
    sign, num, den = m.groups()
    den = int(den) if den is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    value = Fraction(int(num), den)
    return -value if sign == "-" else value


def format_rational(a: Fraction) -> str:
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"
