"""Exact rational scalars.

All scalars are ``gmpy2.mpq``; it hashes and compares like ``fractions.Fraction``
but is an order of magnitude faster, which matters for envelope closures and
jet compositions.
"""

from fractions import Fraction

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def q(value, den=None):
    """Coerce ``value`` (int, Fraction, mpq or a ``"p/q"`` string) to mpq."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def qstr(value):
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    value = mpq(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
