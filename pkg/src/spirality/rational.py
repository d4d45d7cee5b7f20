"""Exact rational values and their wire format.

Every number this package reports is an exact rational, written as "p" for
integers and "p/q" otherwise, with q > 0 and gcd(|p|, q) = 1.
``fractions.Fraction`` maintains exactly this normal form after every
operation, so it is used as the rational type throughout; this module owns
the (strict) string format.
"""

import re
from fractions import Fraction

from .errors import ParseError

_RATIONAL_RE = re.compile(r"^[+-]?[0-9]+(?:/[+-]?[0-9]+)?$")


def parse_rational(text):
    """Parse "p" or "p/q" into a Fraction. Rejects anything else."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ParseError("malformed rational %r (expected \"p\" or \"p/q\")" % (text,))
    body = text.strip()
    if "/" in body:
        num, den = body.split("/")
        if int(den) == 0:
            raise ParseError("malformed rational %r (zero denominator)" % (text,))
        return Fraction(int(num), int(den))
    return Fraction(int(body))


def format_rational(value):
    """Render a Fraction (or int) as "p" or "p/q" with q > 0 in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)
