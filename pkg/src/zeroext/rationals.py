"""Exact rational values extended with a single infinity element.

Finite values are fractions.Fraction; the infinite value is INF (float inf,
used only as a marker, never mixed into fraction arithmetic).  The helper
functions implement the usual extended conventions, in particular 0 * INF = 0.
"""

from fractions import Fraction

INF = float("inf")


def as_fraction(x):
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValueError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"not a rational: {x!r}")


def is_finite(v):
    return v != INF


def fmt(v):
    """Render a value as 'inf', an integer string, or 'p/q'."""
    if v == INF:
        return "inf"
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def ext_add(a, b):
    if a == INF or b == INF:
        return INF
    return a + b


def ext_sum(values):
    total = Fraction(0)
    for v in values:
        if v == INF:
            return INF
        total += v
    return total


def ext_scale(c, v):
    """c * v for nonnegative rational c, with 0 * INF = 0."""
    c = as_fraction(c)
    if c < 0:
        raise ValueError("negative scale for extended value")
    if c == 0:
        return Fraction(0)
    if v == INF:
        return INF
    return c * v
