"""The five sum-preserving rewrites of count arrays.

Move 1 trades two copies of a term for one copy of the term twice as large,
inside a single row.  Moves 2-5 trade a batch of terms in row b+1 for one or
two terms in row b; the batch sizes depend on k mod 4, so each of those moves
is a pair of amount vectors:

    upper -- counts removed from row b+1 by a reduction,
    lower -- counts added to row b by a reduction.

An expansion is the exact inverse (remove `lower` from row b, add `upper` to
row b+1).  Reductions shrink the term count by sum(upper) - sum(lower), which
is >= 1 for every k that is not a power of 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache

from .core import Base, ResidueClass, Row, Rows, SolutionArray, ZERO_ROW, canonical_rows
from .errors import MoveUndefinedError, NotApplicableError


class Move(IntEnum):
    M1 = 1
    M2 = 2
    M3 = 3
    M4 = 4
    M5 = 5


class Direction(Enum):
    REDUCTION = "reduction"
    EXPANSION = "expansion"


class ColumnPair(Enum):
    """Which adjacent column pair Move 1 edits: LEFT = (0, 1), RIGHT = (1, 2)."""

    LEFT = 0
    RIGHT = 1


@dataclass(frozen=True)
class MoveApplication:
    """One fully determined rewrite: move, direction, and position.

    For Move 1, `row` is the row being edited and `column_pair` selects the
    two adjacent cells.  For Moves 2-5, `row` is the lower row b of the
    (b, b+1) pair and `column_pair` must be None.
    """

    move: Move
    direction: Direction
    row: int
    column_pair: ColumnPair | None = None

    def __post_init__(self) -> None:
        if self.row < 0:
            raise ValueError(f"row must be nonnegative, got {self.row}")
        if self.move is Move.M1 and self.column_pair is None:
            raise ValueError("Move 1 requires a column pair")
        if self.move is not Move.M1 and self.column_pair is not None:
            raise ValueError(f"{self.move.name} does not take a column pair")

    def inverse(self) -> MoveApplication:
        flipped = (
            Direction.EXPANSION
            if self.direction is Direction.REDUCTION
            else Direction.REDUCTION
        )
        return MoveApplication(self.move, flipped, self.row, self.column_pair)


@dataclass(frozen=True)
class RowRule:
    """Amount vectors of one of Moves 2-5 for a specific base."""

    upper: Row
    lower: Row

    @property
    def delta(self) -> int:
        """Decrease in term count when the move is applied as a reduction."""
        return sum(self.upper) - sum(self.lower)


@lru_cache(maxsize=None)
def row_rule(move: Move, base: Base) -> RowRule:
    """Look up the (upper, lower) vectors of a two-row move.

    Moves 3 and 5 exist only for odd k; Move 4 does not exist when
    k is divisible by 4.
    """
    k = base.k
    r = base.residue
    if move is Move.M2:
        if r is ResidueClass.R0:
            return RowRule((k // 4, 0, 0), (0, 0, 1))
        if r is ResidueClass.R2:
            return RowRule((k // 2, 0, 0), (0, 1, 0))
        return RowRule((k, 0, 0), (1, 0, 0))
    if move is Move.M3:
        if r is ResidueClass.R1:
            return RowRule(((k - 1) // 4, 0, 1), (0, 0, 1))
        if r is ResidueClass.R3:
            return RowRule(((3 * k - 1) // 4, 0, 1), (0, 1, 1))
        raise MoveUndefinedError(f"Move 3 is only defined for odd k, got k={k}")
    if move is Move.M4:
        if r is ResidueClass.R0:
            raise MoveUndefinedError(f"Move 4 is not defined for k ≡ 0 (mod 4), got k={k}")
        if r is ResidueClass.R2:
            return RowRule(((k - 2) // 4, 1, 0), (0, 0, 1))
        return RowRule(((k - 1) // 2, 1, 0), (0, 1, 0))
    if move is Move.M5:
        if r is ResidueClass.R1:
            return RowRule(((3 * k - 3) // 4, 1, 1), (0, 1, 1))
        if r is ResidueClass.R3:
            return RowRule(((k - 3) // 4, 1, 1), (0, 0, 1))
        raise MoveUndefinedError(f"Move 5 is only defined for odd k, got k={k}")
    raise MoveUndefinedError(f"Move 1 has no row rule; {move!r} unexpected")


def move_delta(move: Move, base: Base) -> int:
    """Decrease in term count under the reduction direction of `move`."""
    if move is Move.M1:
        return 1
    return row_rule(move, base).delta


def _required_cells(app: MoveApplication, base: Base) -> list[tuple[int, int, int]]:
    """Cells (row, column, minimum count) the application needs to decrement."""
    b = app.row
    if app.move is Move.M1:
        a = app.column_pair.value  # LEFT edits columns (0, 1), RIGHT edits (1, 2)
        if app.direction is Direction.REDUCTION:
            return [(b, a + 1, 2)]
        return [(b, a, 1)]
    rule = row_rule(app.move, base)
    if app.direction is Direction.REDUCTION:
        return [(b + 1, a, c) for a, c in enumerate(rule.upper) if c]
    return [(b, a, c) for a, c in enumerate(rule.lower) if c]


def _cell(rows: Rows, b: int, a: int) -> int:
    return rows[b][a] if b < len(rows) else 0


def applicable(array: SolutionArray, app: MoveApplication) -> bool:
    """True when every cell the application would decrement is large enough."""
    return all(
        _cell(array.rows, b, a) >= need
        for b, a, need in _required_cells(app, array.base)
    )


def reduction_applicable(array: SolutionArray, app: MoveApplication) -> bool:
    """Applicability of a reduction; rejects expansion applications outright."""
    if app.direction is not Direction.REDUCTION:
        raise ValueError("reduction_applicable expects a Reduction application")
    return applicable(array, app)


def apply_move(array: SolutionArray, app: MoveApplication) -> SolutionArray:
    """Apply one rewrite and return the new canonical array.

    The sum of the encoded unit fractions never changes; the term count moves
    by move_delta, down for reductions and up for expansions.  Raises
    NotApplicableError naming the first missing cell.
    """
    for b, a, need in _required_cells(app, array.base):
        have = _cell(array.rows, b, a)
        if have < need:
            raise NotApplicableError(
                f"{app.move.name} {app.direction.value} at row {app.row} needs "
                f"c[{a},{b}] >= {need}, found {have}"
            )
    top_needed = app.row if app.move is Move.M1 else app.row + 1
    grid = [list(row) for row in array.rows]
    grid.extend([0, 0, 0] for _ in range(top_needed + 1 - len(grid)))
    if app.move is Move.M1:
        a = app.column_pair.value
        sign = 1 if app.direction is Direction.REDUCTION else -1
        grid[app.row][a] += sign
        grid[app.row][a + 1] -= 2 * sign
    else:
        rule = row_rule(app.move, array.base)
        sign = 1 if app.direction is Direction.REDUCTION else -1
        for a in range(3):
            grid[app.row + 1][a] -= sign * rule.upper[a]
            grid[app.row][a] += sign * rule.lower[a]
    return SolutionArray(canonical_rows(grid), array.base)


def moves_for(base: Base) -> list[Move]:
    """All moves defined for the residue class of this base."""
    out = [Move.M1, Move.M2]
    if base.residue in (ResidueClass.R1, ResidueClass.R3):
        out += [Move.M3, Move.M4, Move.M5]
    elif base.residue is ResidueClass.R2:
        out.append(Move.M4)
    return out
