"""Exact rational parsing and formatting for the JSON interfaces.

Everything in this package is exact: coefficients are ints or
fractions.Fraction, never floats.  JSON carries rationals as strings
"p" or "p/q" so nothing is ever rounded on the way in or out.
"""

import re
from fractions import Fraction

_INT_RE = re.compile(r"^[+-]?[0-9]+$")


def parse_rational(value):
    """Parse an int or a string "p" / "p/q" into a Fraction.

    Floats (and float-looking strings) are rejected outright: a value
    like 0.1 has no exact binary representation and would silently
    poison every downstream rank computation.
    """
    if isinstance(value, bool):
        raise ValueError("rational expected, got a bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        parts = value.strip().split("/")
        if len(parts) == 1 and _INT_RE.match(parts[0]):
            return Fraction(int(parts[0]))
        if len(parts) == 2 and _INT_RE.match(parts[0]) and _INT_RE.match(parts[1]):
            num, den = int(parts[0]), int(parts[1])
            if den == 0:
                raise ValueError("rational with zero denominator: %r" % value)
            return Fraction(num, den)
        raise ValueError("not a rational string: %r" % value)
    raise ValueError("rational expected, got %s" % type(value).__name__)


def format_rational(q):
    """Format a Fraction (or int) as "p" or "p/q", lowest terms."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)
