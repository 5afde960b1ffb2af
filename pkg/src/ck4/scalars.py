"""Scalar backends: exact rationals, or floats with an explicit tolerance.

Every quantity in the pipeline is a plain Python number.  Rational inputs
stay in ``fractions.Fraction`` end to end, so zero tests and rank decisions
are exact.  Float inputs switch the whole computation to the float backend,
which carries a relative tolerance (default 1e-9) used by all zero tests.
Mixed arithmetic degrades gracefully: structural constants such as 1/2 are
stored as Fractions and turn into floats on contact with float data.
"""

from __future__ import annotations

from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"

DEFAULT_FLOAT_TOL = 1e-9

HALF = Fraction(1, 2)


class ScalarError(ValueError):
    """A scalar string or value could not be parsed for the chosen backend."""


def parse_scalar(value, backend=RATIONAL):
    """Parse a user-facing scalar (int, Fraction, float, or 'p/q' string)."""
    if isinstance(value, bool):
        raise ScalarError(f"not a scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value) if backend == RATIONAL else float(value)
    if isinstance(value, float):
        if backend == RATIONAL:
            raise ScalarError(
                f"float {value!r} is not allowed in the rational backend; "
                "pass a 'p/q' string or switch to the float backend"
            )
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError):
            if backend == FLOAT:
                try:
                    return float(text)
                except ValueError as exc:
                    raise ScalarError(f"cannot parse scalar {value!r}") from exc
            raise ScalarError(f"cannot parse scalar {value!r}") from None
        return frac if backend == RATIONAL else float(frac)
    raise ScalarError(f"cannot parse scalar {value!r}")


def infer_backend(values):
    """Float backend as soon as any raw input is a float, rational otherwise."""
    for v in values:
        if isinstance(v, float):
            return FLOAT
    return RATIONAL


def format_scalar(x):
    """Render a scalar for reports: Fractions as 'p/q', floats via repr."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def scalar_to_json(x):
    """JSON value for a scalar: exact values as strings, floats as numbers."""
    if isinstance(x, (int, Fraction)):
        return format_scalar(x)
    return float(x)


def is_zero(x, eps=0, scale=1):
    """Zero test: exact when eps == 0, else |x| <= eps * max(1, scale)."""
    if eps == 0:
        return x == 0
    bound = eps * scale if scale > 1 else eps
    return abs(x) <= bound
