"""Parsing and formatting of exact rational scalars.

Every scalar in this package is a ``fractions.Fraction``.  Decimal strings
are parsed exactly ("0.25" -> 1/4), never through floats.
"""

from fractions import Fraction

from .errors import ParseError

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Parse an int, Fraction, "p/q" string, or decimal string exactly.

    Floats are rejected: the library has no tolerance anywhere, so a float
    input is almost certainly a bug at the call site.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"refusing to parse float {value!r}; pass a string or Fraction")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"cannot parse {type(value).__name__} as rational")


def format_rational(q: Fraction) -> str:
    """Format as "p" or "p/q" with positive denominator."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
