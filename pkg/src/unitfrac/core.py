"""Count-array encoding of unit-fraction representations of 1.

A representation 1 = sum of fractions 1/(2^a * k^b), with a in {0, 1, 2} and
b >= 0, is stored as a grid of counts: column a, row b, entry = how many times
the term 1/(2^a * k^b) occurs.  Rows are stored bottom-up (b = 0 first); the
grid always has three columns.  Because k is never a power of 2, each allowed
denominator factors as 2^a * k^b in exactly one way, so the grid determines
the multiset of denominators and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyArrayError, NotInSkError, PowerOfTwoError

Row = tuple[int, int, int]
Rows = tuple[Row, ...]

ZERO_ROW: Row = (0, 0, 0)


class ResidueClass(IntEnum):
    """Residue of k modulo 4; gates which moves exist for the base."""

    R0 = 0
    R1 = 1
    R2 = 2
    R3 = 3


@dataclass(frozen=True)
class Base:
    """A valid base k (never a power of 2) with its residue class mod 4."""

    k: int
    residue: ResidueClass

    def __str__(self) -> str:
        return f"k={self.k}"


def make_base(k: int) -> Base:
    """Validate k and classify it mod 4.

    Rejects every power of 2, including 1 = 2^0 and 2 itself: for those
    values the factorization 2^a * k^b is ambiguous and the whole encoding
    collapses.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if k & (k - 1) == 0:
        raise PowerOfTwoError(f"k={k} is a power of 2")
    return Base(k, ResidueClass(k % 4))


def canonical_rows(rows: Iterable[Sequence[int]]) -> Rows:
    """Normalize to the canonical form: drop trailing all-zero rows.

    At least one row is always kept, so the all-zero single-row grid is its
    own canonical form.  Interior and bottom zero rows are meaningful (they
    mark powers of k that do not occur) and are preserved.
    """
    out = [(int(r[0]), int(r[1]), int(r[2])) for r in rows]
    if not out:
        out = [ZERO_ROW]
    for row in out:
        if len(row) != 3:
            raise ValueError(f"rows must have exactly 3 entries, got {row}")
        if any(c < 0 for c in row):
            raise ValueError(f"counts must be nonnegative, got {row}")
    while len(out) > 1 and out[-1] == ZERO_ROW:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class SolutionArray:
    """Immutable count grid plus its base.

    `rows` must already be canonical; use `from_rows` to build from raw data.
    Two arrays are equal exactly when their canonical forms and bases agree.
    """

    rows: Rows
    base: Base

    def __post_init__(self) -> None:
        if canonical_rows(self.rows) != self.rows:
            raise ValueError(f"rows are not in canonical form: {self.rows}")

    @classmethod
    def from_rows(cls, base: Base, rows: Iterable[Sequence[int]]) -> SolutionArray:
        return cls(canonical_rows(rows), base)

    def display(self) -> str:
        """Render the grid with the top row (largest b) first."""
        width = max(len(str(c)) for row in self.rows for c in row)
        return "\n".join(
            " ".join(str(c).rjust(width) for c in row) for row in reversed(self.rows)
        )

    def __str__(self) -> str:
        body = "; ".join(",".join(map(str, row)) for row in self.rows)
        return f"[{body}] (k={self.base.k})"


TRIVIAL_ROWS: Rows = ((1, 0, 0),)


def trivial_array(base: Base) -> SolutionArray:
    """The one-term representation 1 = 1/1, the root of every reduction chain."""
    return SolutionArray(TRIVIAL_ROWS, base)


def top_nonzero_row(array: SolutionArray) -> int:
    """Index of the highest row containing a nonzero count."""
    for b in range(len(array.rows) - 1, -1, -1):
        if array.rows[b] != ZERO_ROW:
            return b
    raise EmptyArrayError("array has no nonzero entry")


def term_count(array: SolutionArray) -> int:
    """Total number of unit-fraction terms the array encodes."""
    return sum(c for row in array.rows for c in row)


def sum_value(array: SolutionArray) -> Fraction:
    """Exact value of the encoded sum of unit fractions.

    Computed over the common denominator 4 * k^beta, so no intermediate
    reduction happens until the very end.
    """
    k = array.base.k
    beta = len(array.rows) - 1
    numerator = 0
    power = k**beta  # k^(beta - b) walks down as b increases
    for row in array.rows:
        numerator += (4 * row[0] + 2 * row[1] + row[2]) * power
        power //= k
    return Fraction(numerator, 4 * k**beta)


def is_solution(array: SolutionArray) -> bool:
    """True when the array encodes a representation of exactly 1."""
    return sum_value(array) == 1


def is_nontrivial(array: SolutionArray) -> bool:
    """True when some count sits above the bottom row (a term divisible by k)."""
    return any(row != ZERO_ROW for row in array.rows[1:])


def is_distinct(array: SolutionArray) -> bool:
    """True when no denominator repeats, i.e. every count is 0 or 1."""
    return all(c <= 1 for row in array.rows for c in row)


_QUOTIENT_TO_A = {1: 0, 2: 1, 4: 2}


def factor_into_sk(x: int, base: Base) -> tuple[int, int]:
    """Write x as 2^a * k^b with a in {0, 1, 2}, b >= 0.

    The representation is unique because k is not a power of 2.
    """
    if x < 1:
        raise NotInSkError(x, base.k)
    kb = 1
    b = 0
    while kb <= x:
        if x % kb == 0:
            a = _QUOTIENT_TO_A.get(x // kb)
            if a is not None:
                return a, b
        kb *= base.k
        b += 1
    raise NotInSkError(x, base.k)


def array_from_solution(denominators: Iterable[int], base: Base) -> SolutionArray:
    """Build the count array for a multiset of denominators.

    Raises NotInSkError for any denominator outside S(k) = {2^a * k^b}.
    """
    counts: dict[tuple[int, int], int] = {}
    top = 0
    for x in denominators:
        a, b = factor_into_sk(int(x), base)
        counts[(a, b)] = counts.get((a, b), 0) + 1
        top = max(top, b)
    rows = [[0, 0, 0] for _ in range(top + 1)]
    for (a, b), c in counts.items():
        rows[b][a] = c
    return SolutionArray.from_rows(base, rows)


def solution_from_array(array: SolutionArray) -> list[int]:
    """Recover the nondecreasing denominator list the array encodes."""
    k = array.base.k
    out: list[int] = []
    kb = 1
    for row in array.rows:
        for a, c in enumerate(row):
            out.extend([(1 << a) * kb] * c)
        kb *= k
    out.sort()
    return out
