"""Parsing and formatting of exact numbers.

Every exact quantity crosses the JSON/CSV boundary as a ``"p/q"`` string;
decimal renderings (20 significant digits by default) are annotations only
and never feed back into any computation.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

DECIMAL_DIGITS = 20


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer literal) into an exact Fraction."""
    if isinstance(text, float):
        raise TypeError("floating-point input rejected; pass an exact 'p/q' string")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational 'p/q' value: {text!r}") from exc


def rational_str(q: Fraction) -> str:
    """Canonical ``"p/q"`` form, denominator always present and positive."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Decimal expansion of a rational, rounded to ``digits`` significant digits."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def surd_decimal_str(coeff: Fraction, radicand: int, digits: int = DECIMAL_DIGITS) -> str:
    """Decimal expansion of ``coeff * sqrt(radicand)`` to ``digits`` significant digits."""
    if radicand < 0:
        raise ValueError("radicand must be non-negative")
    with localcontext() as ctx:
        ctx.prec = digits + 10
        value = Decimal(coeff.numerator) / Decimal(coeff.denominator)
        if radicand != 1:
            value *= Decimal(radicand).sqrt()
        ctx.prec = digits
        return str(+value)
