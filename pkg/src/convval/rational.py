"""Exact rational scalars.

Every quantity in this package is an arbitrary-precision rational; floats are
rejected at the boundary.  Two interchangeable backends provide the scalar
type: gmpy2's mpq (used when importable, considerably faster) and the standard
library's Fraction.  Both canonicalize to lowest terms with a positive
denominator and hash/compare identically, so the choice never changes results,
only speed.  Set CONVVAL_RATIONAL=fraction or =gmpy2 to force one.
"""

import os
import re

from fractions import Fraction

from .errors import ParseError

__all__ = [
    "Q",
    "BACKEND",
    "rat",
    "parse_rational",
    "format_rational",
    "rat_vector",
    "parse_vector",
    "format_vector",
]


def _pick_backend():
    choice = os.environ.get("CONVVAL_RATIONAL", "auto").lower()
    if choice not in ("auto", "gmpy2", "fraction"):
        raise ValueError(f"CONVVAL_RATIONAL must be 'gmpy2' or 'fraction', got {choice!r}")
    if choice in ("auto", "gmpy2"):
        try:
            from gmpy2 import mpq

            return mpq, "gmpy2"
        except ImportError:
            if choice == "gmpy2":
                raise
    return Fraction, "fraction"


Q, BACKEND = _pick_backend()

_ZERO = Q(0)

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def rat(value, den=None):
    """Coerce to the exact rational scalar type.

    Accepts ints, rationals of either backend, Fraction, and "p/q" strings.
    Floats are refused: they would silently smuggle rounding error into an
    exact computation.
    """
    if den is not None:
        return Q(rat(value) / rat(den))
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; pass an int, Fraction or 'p/q' string")
    if isinstance(value, str):
        return parse_rational(value)
    return Q(value)


def parse_rational(text, where=""):
    """Parse a canonical-or-not "p/q" (or bare integer) string."""
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}", where)
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError(f"malformed rational {text!r}", where)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", where)
    return Q(num, den)


def format_rational(q):
    """Canonical serialization: lowest terms, positive denominator, always "p/q"."""
    q = Q(q)
    return f"{q.numerator}/{q.denominator}"


def rat_vector(values):
    """Coerce a sequence to a tuple of exact rationals."""
    return tuple(rat(v) for v in values)


def parse_vector(text, where=""):
    """Parse a comma-separated vector of rationals, e.g. "1,-1/2,3"."""
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ParseError("empty vector", where)
    return tuple(parse_rational(p, where) for p in parts)


def format_vector(vec):
    return ",".join(format_rational(v) for v in vec)
