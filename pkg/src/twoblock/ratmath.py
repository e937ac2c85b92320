"""Exact rational helpers: integer roots, directed root bounds, rendering.

Square roots are never materialized as floats anywhere in the package;
inequalities are restated on squares (or D-th powers) and the few reported
irrational quantities are enclosed from above by dyadic rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

__all__ = [
    "iroot",
    "frac_floor",
    "frac_isqrt",
    "root_upper",
    "sqrt_upper",
    "ceil_decimal_str",
]


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("iroot of negative number")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if n in (0, 1) or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    # Newton iteration on integers; converges from above.
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def frac_floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def frac_isqrt(q: Fraction) -> int:
    """Largest integer t with t*t <= q (q nonnegative)."""
    if q < 0:
        raise ValueError("frac_isqrt of negative value")
    return isqrt(frac_floor(q))


def root_upper(q: Fraction, k: int, bits: int = 64) -> Fraction:
    """Dyadic upper bound on q**(1/k), within relative error 2**-bits."""
    if q < 0:
        raise ValueError("root of negative value")
    if q == 0:
        return Fraction(0)
    scale = 1 << bits
    scaled = (q.numerator * scale**k) // q.denominator
    return Fraction(iroot(scaled, k) + 1, scale)


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    return root_upper(q, 2, bits)


def ceil_decimal_str(q: Fraction, places: int = 12) -> str:
    """Decimal rendering of q rounded up (toward +inf) at the given places."""
    scaled = -((-q.numerator * 10**places) // q.denominator)
    sign, mag = ("-", -scaled) if scaled < 0 else ("", scaled)
    whole, frac = divmod(mag, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"
