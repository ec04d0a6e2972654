"""Brute-force reference enumerator, independent of the move machinery.

Searches nondecreasing denominator tuples directly, with the two classic
prunes: the next denominator x must satisfy 1/x <= remaining (one term cannot
overshoot) and m/x >= remaining (the m largest possible terms must still be
able to cover what is left).  Only useful at small n; the dynamic program is
the production path.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import Base


def sk_elements_between(base: Base, lo: int, hi: int) -> list[int]:
    """All 2^a * k^b with a in {0, 1, 2}, b >= 0 inside [lo, hi], ascending."""
    if lo < 1 or hi < lo:
        return []
    out = []
    kb = 1
    while kb <= hi:
        for a in (1, 2, 4):
            x = a * kb
            if lo <= x <= hi:
                out.append(x)
        kb *= base.k
    out.sort()
    return out


def brute_force(base: Base, n: int) -> set[tuple[int, ...]]:
    """All nondecreasing n-tuples over S(k) whose reciprocals sum to 1."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    results: set[tuple[int, ...]] = set()
    prefix: list[int] = []

    def search(remaining: Fraction, m: int, min_x: int) -> None:
        if remaining <= 0:
            return
        if m == 1:
            # Last slot: remaining must itself be a unit fraction over S(k).
            if remaining.numerator == 1 and remaining.denominator >= min_x:
                x = remaining.denominator
                if sk_elements_between(base, x, x):
                    results.add((*prefix, x))
            return
        lo = max(min_x, math.ceil(Fraction(1) / remaining))
        hi = math.floor(m / remaining)
        for x in sk_elements_between(base, lo, hi):
            prefix.append(x)
            search(remaining - Fraction(1, x), m - 1, x)
            prefix.pop()

    search(Fraction(1), n, 1)
    return results
