"""Deterministic priority reduction and its inverse expansions.

Every solution array other than the one-term root admits a reduction that
edits its top nonzero row beta.  Picking the first applicable option from the
fixed ordering

    (1) Move 1 on c[2,beta] >= 2      (2) Move 1 on c[1,beta] >= 2
    (3) Move 2 at rows (beta-1,beta)  (4) Move 3  (5) Move 4  (6) Move 5

makes the reduction a function, so every solution array has a unique chain of
reductions down to the root, and the inverse edges (priority expansions) form
a tree.  An expansion is a priority expansion exactly when the child's
priority reduction inverts it; we generate candidates and filter with the
reducer itself, which is the definition and immune to case-analysis slips.

Candidate positions are limited: the child's top nonzero row is beta or
beta+1, and its priority reduction edits that row, so the inverse expansion
must have edited it too.  That pins Move 1 to row beta and Moves 2-5 to lower
row beta-1 (augment the top row) or beta (create a new top row).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import Base, ResidueClass, Rows, SolutionArray, TRIVIAL_ROWS
from .errors import IrreducibleError
from .moves import ColumnPair, Direction, Move, MoveApplication, apply_move, row_rule

# Raw descriptors are (move_number, row, pair) with pair 0 = LEFT / 1 = RIGHT
# for Move 1 and None otherwise; `row` follows the MoveApplication convention
# (edited row for Move 1, lower row b for Moves 2-5).
Descriptor = tuple[int, int, int | None]


class TrivialMarker:
    """Returned by priority_reduction for the root array; not an error."""

    _instance: TrivialMarker | None = None

    def __new__(cls) -> TrivialMarker:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TrivialMarker()"


TRIVIAL = TrivialMarker()


@dataclass(frozen=True)
class ReductionStep:
    """One priority reduction edge: child == apply_move(parent, app)."""

    app: MoveApplication
    parent: SolutionArray
    child: SolutionArray


@lru_cache(maxsize=None)
def _kernel_rules(base: Base) -> tuple[tuple, dict]:
    """Flattened move tables for the raw-tuple kernel.

    Returns (priority, by_move): `priority` lists (move, u0, u1, u2) for the
    moves defined on this residue class, in priority order; `by_move` maps
    move number to (u0, u1, u2, d0, d1, d2, upper_row).
    """
    if base.residue in (ResidueClass.R1, ResidueClass.R3):
        move_order = (Move.M2, Move.M3, Move.M4, Move.M5)
    elif base.residue is ResidueClass.R2:
        move_order = (Move.M2, Move.M4)
    else:
        move_order = (Move.M2,)
    priority = []
    by_move = {}
    for move in move_order:
        rule = row_rule(move, base)
        priority.append((int(move), *rule.upper))
        by_move[int(move)] = (*rule.upper, *rule.lower, rule.upper)
    return tuple(priority), by_move


def _descriptor(rows: Rows, priority: tuple) -> Descriptor | None:
    """Priority reduction of a raw canonical row tuple; None for the root.

    Raises IrreducibleError when nothing applies, which cannot happen for an
    array that encodes a solution.
    """
    beta = len(rows) - 1
    c0, c1, c2 = rows[beta]
    if c2 >= 2:
        return (1, beta, 1)
    if c1 >= 2:
        return (1, beta, 0)
    if beta:
        for move, u0, u1, u2 in priority:
            if c0 >= u0 and c1 >= u1 and c2 >= u2:
                return (move, beta - 1, None)
    if rows == TRIVIAL_ROWS:
        return None
    raise IrreducibleError(f"no reduction move applies to {rows}")


def _reduce_once(rows: Rows, desc: Descriptor, by_move: dict) -> Rows:
    """Apply a descriptor produced by _descriptor for these same rows."""
    move, b, pair = desc
    if move == 1:
        c0, c1, c2 = rows[b]
        row = (c0, c1 + 1, c2 - 2) if pair else (c0 + 1, c1 - 2, c2)
        return rows[:b] + (row,) + rows[b + 1 :]
    u0, u1, u2, d0, d1, d2, _ = by_move[move]
    h0, h1, h2 = rows[b + 1]
    l0, l1, l2 = rows[b]
    hi = (h0 - u0, h1 - u1, h2 - u2)
    lo = (l0 + d0, l1 + d1, l2 + d2)
    if hi == (0, 0, 0) and b + 2 == len(rows):
        return rows[:b] + (lo,)
    return rows[:b] + (lo, hi) + rows[b + 2 :]


def _expansions(rows: Rows, move: int, priority: tuple, by_move: dict) -> list[Rows]:
    """Children of `rows` under priority expansions of one move."""
    beta = len(rows) - 1
    out = []
    if move == 1:
        c0, c1, c2 = rows[beta]
        head = rows[:beta]
        if c0:
            child = head + ((c0 - 1, c1 + 2, c2),)
            if _descriptor(child, priority) == (1, beta, 0):
                out.append(child)
        if c1:
            child = head + ((c0, c1 - 1, c2 + 2),)
            if _descriptor(child, priority) == (1, beta, 1):
                out.append(child)
        return out
    entry = by_move.get(move)
    if entry is None:
        return out
    u0, u1, u2, d0, d1, d2, upper = entry
    c0, c1, c2 = rows[beta]
    if c0 >= d0 and c1 >= d1 and c2 >= d2:
        child = rows[:beta] + ((c0 - d0, c1 - d1, c2 - d2), upper)
        if _descriptor(child, priority) == (move, beta, None):
            out.append(child)
    if beta:
        c0, c1, c2 = rows[beta - 1]
        if c0 >= d0 and c1 >= d1 and c2 >= d2:
            t0, t1, t2 = rows[beta]
            child = rows[: beta - 1] + (
                (c0 - d0, c1 - d1, c2 - d2),
                (t0 + u0, t1 + u1, t2 + u2),
            )
            if _descriptor(child, priority) == (move, beta - 1, None):
                out.append(child)
    return out


def _to_application(desc: Descriptor) -> MoveApplication:
    move, row, pair = desc
    column_pair = None if pair is None else ColumnPair(pair)
    return MoveApplication(Move(move), Direction.REDUCTION, row, column_pair)


def priority_reduction(array: SolutionArray) -> ReductionStep | TrivialMarker:
    """The unique highest-priority reduction of a solution array.

    Returns TRIVIAL for the root; the caller is expected to pass arrays that
    encode solutions (anything else may raise IrreducibleError).
    """
    priority, by_move = _kernel_rules(array.base)
    desc = _descriptor(array.rows, priority)
    if desc is None:
        return TRIVIAL
    child = SolutionArray(_reduce_once(array.rows, desc, by_move), array.base)
    return ReductionStep(_to_application(desc), array, child)


def reduction_chain(array: SolutionArray) -> list[ReductionStep]:
    """Priority reductions from `array` all the way down to the root.

    Terminates because every step strictly decreases the term count; the
    chain is unique because the reducer is a function.
    """
    priority, by_move = _kernel_rules(array.base)
    steps: list[ReductionStep] = []
    current = array
    while True:
        desc = _descriptor(current.rows, priority)
        if desc is None:
            return steps
        child = SolutionArray(_reduce_once(current.rows, desc, by_move), array.base)
        steps.append(ReductionStep(_to_application(desc), current, child))
        current = child


def priority_expansions(array: SolutionArray, move: Move) -> list[SolutionArray]:
    """All children whose priority reduction undoes an expansion of `move`.

    Sorted by row grid for determinism.  Empty when the move is undefined for
    the base or no candidate survives the roundtrip filter.
    """
    priority, by_move = _kernel_rules(array.base)
    children = _expansions(array.rows, int(move), priority, by_move)
    return [SolutionArray(rows, array.base) for rows in sorted(children)]


def verify_roundtrip(parent: SolutionArray, child: SolutionArray) -> bool:
    """Check via apply_move that child's priority reduction lands on parent."""
    step = priority_reduction(child)
    if isinstance(step, TrivialMarker):
        return False
    return step.child == parent and apply_move(child, step.app) == parent
