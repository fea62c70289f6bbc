"""Scalar helpers shared by the exact and float code paths.

Internally exact arithmetic runs on ``gmpy2.mpq`` when available (an order
of magnitude faster than ``fractions.Fraction``); public results are
converted back to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as rational
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    rational = Fraction
    HAVE_GMPY2 = False

_RATIONAL_TYPES = (rational, Fraction, int)


def to_rational(v):
    if type(v) is rational:
        return v
    if isinstance(v, float):
        return rational(Fraction(repr(v)))
    return rational(v)


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


def converter(exact: bool):
    return to_rational if exact else float


def const(value, exact: bool):
    return rational(value) if exact else float(value)
