"""Existence of nontrivial solutions and explicit witnesses.

A nontrivial solution with n terms exists exactly when (k, n) = (3, 3) or n
reaches a threshold that depends only on k mod 4.  Above the threshold a
witness can be written down directly: a grid with s + 1 rows whose middle
rows repeat a fixed pattern and whose top row absorbs the remainder t, where
s and t split n against the per-row term cost of the pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Base, ResidueClass, SolutionArray
from .errors import NoNontrivialSolutionError

_THRESHOLD_OFFSET = {
    ResidueClass.R0: 8,
    ResidueClass.R1: 11,
    ResidueClass.R2: 10,
    ResidueClass.R3: 13,
}


@dataclass(frozen=True)
class Threshold:
    """Least term count admitting a nontrivial solution for a base k.

    (3, 3) also admits one even though it sits below the k=3 threshold of 4;
    `special_case` flags that single exception.
    """

    k: int
    n_min: int
    special_case: bool


def min_n_nontrivial(base: Base) -> Threshold:
    """Threshold (k + offset)/4 with the offset picked by k mod 4."""
    numerator = base.k + _THRESHOLD_OFFSET[base.residue]
    if numerator % 4:
        raise AssertionError(f"threshold {numerator}/4 not integral for k={base.k}")
    return Threshold(base.k, numerator // 4, special_case=base.k == 3)


def exists_nontrivial(base: Base, n: int) -> bool:
    """Whether any nontrivial solution with exactly n terms exists."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if (base.k, n) == (3, 3):
        return True
    return n >= min_n_nontrivial(base).n_min


@dataclass(frozen=True)
class ConstructionParams:
    """Row split of the witness: s + 1 rows, remainder t folded into the top."""

    s: int
    t: int


def _params(n_eff: int, period: int) -> ConstructionParams:
    return ConstructionParams(n_eff // period, n_eff % period)


def construct_nontrivial(base: Base, n: int) -> SolutionArray:
    """An explicit nontrivial solution with exactly n terms.

    Per residue class (bottom row, repeated middle row, top row with
    remainder t; s >= 1 middle-plus-top rows above the bottom):

      k ≡ 0: (0,1,1) | (k/4-1, 1, 1)     | (k/4-t, 2t, 0)
      k ≡ 1: (0,1,1) | ((k-1)/4, 0, 0)   | ((k-1)/4-t, 2t, 1)
      k ≡ 2: (0,1,1) | ((k-2)/4, 0, 1)   | ((k-2)/4-t, 1+2t, 0)
      k ≡ 3: (0,1,1) | ((k-3)/4, 1, 0)   | ((k-3)/4-t, 1+2t, 1)

    plus the lone sub-threshold witness for (k, n) = (3, 3).
    """
    if not exists_nontrivial(base, n):
        threshold = min_n_nontrivial(base)
        raise NoNontrivialSolutionError(
            f"no nontrivial solution with {n} terms for k={base.k} "
            f"(requires n >= {threshold.n_min}"
            + (" or (k, n) = (3, 3))" if threshold.special_case else ")")
        )
    k = base.k
    if (k, n) == (3, 3):
        return SolutionArray.from_rows(base, [(0, 1, 0), (1, 1, 0)])
    if base.residue is ResidueClass.R0:
        p = k // 4
        params = _params(n - 1, p + 1)
        middle, top = (p - 1, 1, 1), (p - params.t, 2 * params.t, 0)
    elif base.residue is ResidueClass.R1:
        p = (k - 1) // 4
        params = _params(n - 3, p)
        middle, top = (p, 0, 0), (p - params.t, 2 * params.t, 1)
    elif base.residue is ResidueClass.R2:
        p = (k - 2) // 4
        params = _params(n - 2, p + 1)
        middle, top = (p, 0, 1), (p - params.t, 1 + 2 * params.t, 0)
    else:
        p = (k - 3) // 4
        params = _params(n - 3, p + 1)
        middle, top = (p, 1, 0), (p - params.t, 1 + 2 * params.t, 1)
    rows = [(0, 1, 1)] + [middle] * (params.s - 1) + [top]
    return SolutionArray.from_rows(base, rows)
