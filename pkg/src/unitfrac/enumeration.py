"""Dynamic program that grows the priority-expansion tree level by level.

Sol(1) holds only the root array; Sol(j) is the union, over the moves the
residue class uses, of the priority expansions of Sol(j - delta(move)).
Every expansion raises the term count by at least 1, so levels can be
processed in increasing order, each one complete before it is expanded.
Sets keyed by the canonical row tuple deduplicate children; the unique-parent
property of priority expansions means duplicates only arise from bugs, and a
property test asserts there are none.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .core import (
    Base,
    ResidueClass,
    Rows,
    SolutionArray,
    TRIVIAL_ROWS,
    ZERO_ROW,
)
from .moves import Move, move_delta
from .priority import _descriptor, _expansions, _kernel_rules, _reduce_once

# Splitting a level across worker threads below this size costs more than it
# saves even without the GIL in the way.
_PARALLEL_THRESHOLD = 4096


def algorithm_moves(base: Base) -> list[Move]:
    """The move set the enumerator expands with, by residue class of k.

    Move 5 is omitted for k ≡ 1 (mod 4): every expansion under it is
    reducible by Move 3 there, so it never survives the roundtrip filter.
    """
    if base.residue is ResidueClass.R0:
        return [Move.M1, Move.M2]
    if base.residue is ResidueClass.R1:
        return [Move.M1, Move.M2, Move.M3, Move.M4]
    if base.residue is ResidueClass.R2:
        return [Move.M1, Move.M2, Move.M4]
    return [Move.M1, Move.M2, Move.M3, Move.M4, Move.M5]


def _expand_chunk(
    chunk: list[Rows], moves: list[tuple[int, int]], priority: tuple, by_move: dict
) -> dict[int, list[Rows]]:
    out: dict[int, list[Rows]] = {delta: [] for _, delta in moves}
    for move, delta in moves:
        bucket = out[delta]
        for rows in chunk:
            bucket.extend(_expansions(rows, move, priority, by_move))
    return out


def _run_levels(
    base: Base,
    n_max: int,
    threads: int = 1,
    on_level: Callable[[int, set[Rows]], None] | None = None,
    retain: bool = True,
    progress: Callable[[int, int], None] | None = None,
) -> dict[int, frozenset[Rows]]:
    """Core DP loop; calls on_level with each completed level.

    With retain=False, completed levels are dropped as soon as they have been
    expanded, which keeps memory proportional to the largest few levels.
    """
    priority, by_move = _kernel_rules(base)
    moves = [(int(m), move_delta(m, base)) for m in algorithm_moves(base)]
    pending: dict[int, set[Rows]] = {1: {TRIVIAL_ROWS}}
    done: dict[int, frozenset[Rows]] = {}
    for j in range(1, n_max + 1):
        level = pending.pop(j, set())
        if progress is not None:
            progress(j, len(level))
        live = [(m, d) for m, d in moves if j + d <= n_max]
        if live:
            chunks: Iterable[list[Rows]]
            if threads > 1 and len(level) >= _PARALLEL_THRESHOLD:
                ordered = list(level)
                size = -(-len(ordered) // threads)
                chunks = [ordered[i : i + size] for i in range(0, len(ordered), size)]
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    results = list(
                        pool.map(
                            lambda c: _expand_chunk(c, live, priority, by_move), chunks
                        )
                    )
            else:
                results = [_expand_chunk(list(level), live, priority, by_move)]
            for result in results:
                for delta, children in result.items():
                    pending.setdefault(j + delta, set()).update(children)
        if on_level is not None:
            on_level(j, level)
        if retain:
            done[j] = frozenset(level)
    return done


@dataclass(frozen=True)
class FrontierMap:
    """All solution arrays with 1..n_max terms, grouped by term count."""

    base: Base
    n_max: int
    _levels: Mapping[int, frozenset[Rows]]

    def level(self, j: int) -> frozenset[Rows]:
        """Raw canonical row tuples of the arrays with exactly j terms."""
        if not 1 <= j <= self.n_max:
            return frozenset()
        return self._levels[j]

    def arrays(self, j: int) -> list[SolutionArray]:
        """Arrays with j terms, sorted by row grid for determinism."""
        return [SolutionArray(rows, self.base) for rows in sorted(self.level(j))]

    def size(self, j: int) -> int:
        return len(self.level(j))

    def sizes(self) -> list[int]:
        return [self.size(j) for j in range(1, self.n_max + 1)]

    def __contains__(self, array: SolutionArray) -> bool:
        n = sum(c for row in array.rows for c in row)
        return array.base == self.base and array.rows in self.level(n)


def enumerate_up_to(base: Base, n_max: int, threads: int = 1) -> FrontierMap:
    """Produce every solution array with up to n_max terms."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    levels = _run_levels(base, n_max, threads=threads)
    return FrontierMap(base, n_max, levels)


def _is_nontrivial_rows(rows: Rows) -> bool:
    # Canonical grids keep a nonzero top row, so depth alone decides.
    return len(rows) > 1


def _is_distinct_rows(rows: Rows) -> bool:
    return all(c <= 1 for row in rows for c in row)


@dataclass(frozen=True)
class LevelCounts:
    """Per-level tallies from one enumeration run; index n-1 holds level n."""

    base: Base
    n_max: int
    total: tuple[int, ...]
    nontrivial: tuple[int, ...]
    distinct_nontrivial: tuple[int, ...]

    def nontrivial_at(self, n: int) -> int:
        return self.nontrivial[n - 1]

    def distinct_nontrivial_at(self, n: int) -> int:
        return self.distinct_nontrivial[n - 1]


def count_levels(
    base: Base,
    n_max: int,
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> LevelCounts:
    """Count solutions at every level without retaining the arrays."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    total = [0] * n_max
    nontrivial = [0] * n_max
    distinct = [0] * n_max

    def tally(j: int, level: set[Rows]) -> None:
        total[j - 1] = len(level)
        for rows in level:
            if _is_nontrivial_rows(rows):
                nontrivial[j - 1] += 1
                if _is_distinct_rows(rows):
                    distinct[j - 1] += 1

    _run_levels(base, n_max, threads=threads, on_level=tally, retain=False, progress=progress)
    return LevelCounts(base, n_max, tuple(total), tuple(nontrivial), tuple(distinct))


def count_nontrivial(base: Base, n: int, threads: int = 1) -> int:
    """Number of nontrivial solutions with exactly n terms."""
    return count_levels(base, n, threads=threads).nontrivial_at(n)


def count_distinct_nontrivial(base: Base, n: int, threads: int = 1) -> int:
    """Number of nontrivial solutions with n pairwise-distinct denominators."""
    return count_levels(base, n, threads=threads).distinct_nontrivial_at(n)


@dataclass(frozen=True)
class EnumerationTree:
    """The priority-expansion tree: unique parent edges labeled by moves."""

    base: Base
    n_max: int
    _parent: Mapping[Rows, tuple[Rows, int] | None] = field(repr=False)

    @property
    def node_count(self) -> int:
        return len(self._parent)

    @property
    def edge_count(self) -> int:
        return sum(1 for v in self._parent.values() if v is not None)

    def nodes(self) -> list[SolutionArray]:
        """All arrays, sorted by (term count, row grid)."""
        keys = sorted(
            self._parent, key=lambda rows: (sum(c for r in rows for c in r), rows)
        )
        return [SolutionArray(rows, self.base) for rows in keys]

    def parent_of(self, array: SolutionArray) -> tuple[SolutionArray, Move] | None:
        entry = self._parent[array.rows]
        if entry is None:
            return None
        parent_rows, move = entry
        return SolutionArray(parent_rows, self.base), Move(move)

    def edges(self) -> list[tuple[SolutionArray, SolutionArray, Move]]:
        """(child, parent, move) triples in node order; the root has no edge."""
        out = []
        for node in self.nodes():
            entry = self.parent_of(node)
            if entry is not None:
                out.append((node, entry[0], entry[1]))
        return out


def build_tree(base: Base, n_max: int, threads: int = 1) -> EnumerationTree:
    """Enumerate and attach each array to its unique priority-reduction parent."""
    frontier = enumerate_up_to(base, n_max, threads=threads)
    priority, by_move = _kernel_rules(base)
    parent: dict[Rows, tuple[Rows, int] | None] = {}
    for j in range(1, n_max + 1):
        for rows in frontier.level(j):
            desc = _descriptor(rows, priority)
            if desc is None:
                parent[rows] = None
            else:
                parent[rows] = (_reduce_once(rows, desc, by_move), desc[0])
    return EnumerationTree(base, n_max, parent)
