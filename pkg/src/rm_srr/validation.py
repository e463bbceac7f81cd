"""Input parsing shared by the estimator and the command line."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Integral, Rational

from .exceptions import ValidationError


def as_rational(value) -> Fraction:
    """Exact rational from an int, Fraction, float, or a "p/q" / decimal string.

    Floats go through their shortest decimal repr, so ``0.1`` becomes 1/10.
    """
    if isinstance(value, bool):
        raise ValidationError("booleans are not rates")
    if isinstance(value, (Integral, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValidationError(f"non-finite rate {value!r}")
        return Fraction(Decimal(repr(float(value))))
    if hasattr(value, "item"):  # numpy scalars
        return as_rational(value.item())
    text = str(value).strip()
    try:
        if "/" in text:
            return Fraction(text)
        return Fraction(Decimal(text))
    except (ValueError, ZeroDivisionError, InvalidOperation):
        raise ValidationError(f"cannot read {value!r} as a rational number") from None


def parse_rates(values, length: int | None = None) -> tuple[Fraction, ...]:
    rates = tuple(as_rational(v) for v in values)
    if any(x < 0 for x in rates):
        raise ValidationError("rates must be nonnegative")
    if length is not None and len(rates) != length:
        raise ValidationError(f"expected {length} rates, got {len(rates)}")
    return rates


def parse_rate_list(text: str) -> tuple[Fraction, ...]:
    """Comma- or whitespace-separated rates, e.g. ``"1, 1/2, 0.5"``."""
    parts = [t for t in text.replace(",", " ").split() if t]
    return parse_rates(parts)


def check_int(name: str, value, low: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if low is not None and value < low:
        raise ValidationError(f"{name} must be at least {low}, got {value}")
    return value
