"""Exact rational formatting helpers.

Every rational leaving the package is printed as "p/q" with q > 0 and
gcd(p, q) = 1, never as a decimal.  Fraction already keeps values in
lowest terms with a positive denominator, so formatting is direct.
"""

from fractions import Fraction

from .errors import ParseError


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a bare integer "p"."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from exc
