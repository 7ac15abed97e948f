"""Exact integer and rational arithmetic.

Python ints are already arbitrary precision, so the integer type is `int`.
`Rat` is a reduced rational (den > 0, gcd(|num|, den) = 1) built on
`fractions.Fraction`; construction normalizes eagerly, which is what the
value-set deduplication elsewhere relies on.

The one non-obvious operation is `rat_cmp_sqrt`: an exact three-way
comparison of a non-negative rational r against sqrt(m/s), done by
cross-multiplying r^2 * s against m so no rounding can occur.
"""

from __future__ import annotations

import math
from fractions import Fraction


class Rat(Fraction):
    """Reduced rational. Prints as "num/den", or "num" when den = 1."""

    __slots__ = ()

    @property
    def num(self) -> int:
        return self.numerator

    @property
    def den(self) -> int:
        return self.denominator


def isqrt(n: int) -> int:
    """Floor of the square root of a non-negative integer."""
    if n < 0:
        raise ValueError("isqrt requires n >= 0")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    """True iff n is a perfect square (negatives never are)."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def rat_cmp_sqrt(r: Rat | Fraction, m: int, s: int) -> int:
    """Compare r against sqrt(m/s) exactly; returns -1, 0, or 1.

    Both sides are non-negative, so the ordering of r and sqrt(m/s) equals
    the ordering of r^2*s and m: compare num^2*s against m*den^2.
    """
    if s <= 0:
        raise ValueError("rat_cmp_sqrt requires s > 0")
    if m < 0 or r < 0:
        raise ValueError("rat_cmp_sqrt requires r >= 0 and m >= 0")
    lhs = r.numerator * r.numerator * s
    rhs = m * r.denominator * r.denominator
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0
