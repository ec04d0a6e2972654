"""Serialization: array JSON documents, tree DOT/JSON, and count tables.

Storage order for rows is always bottom-up (b = 0 first), matching the
in-memory encoding; only rendered grids (DOT labels, text display) are
flipped so the largest power of k appears on top.  All emitters sort nodes
and rows, so output bytes do not depend on set iteration order or thread
count.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .core import (
    Base,
    SolutionArray,
    is_distinct,
    is_nontrivial,
    make_base,
    solution_from_array,
    term_count,
)
from .enumeration import EnumerationTree, LevelCounts, count_levels
from .errors import KMismatchError, ParseError


def array_to_json(array: SolutionArray) -> str:
    """Minimal lossless document: {"k": ..., "rows": [[c0, c1, c2], ...]}."""
    return json.dumps({"k": array.base.k, "rows": [list(row) for row in array.rows]})


def array_document(array: SolutionArray) -> dict[str, Any]:
    """Array JSON plus derived fields, for listings and tree exports."""
    return {
        "k": array.base.k,
        "rows": [list(row) for row in array.rows],
        "n": term_count(array),
        "denominators": solution_from_array(array),
        "nontrivial": is_nontrivial(array),
        "distinct": is_distinct(array),
    }


def _require_int(value: Any, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", location)
    return value


def array_from_dict(doc: Any, expected_k: int | None = None) -> SolutionArray:
    """Build an array from an already-parsed document (dict)."""
    if not isinstance(doc, dict):
        raise ParseError(f"expected an object, got {type(doc).__name__}", "$")
    for key in ("k", "rows"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}", "$")
    k = _require_int(doc["k"], "k")
    if expected_k is not None and k != expected_k:
        raise KMismatchError(f"document has k={k}, expected k={expected_k}")
    base = make_base(k)
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows:
        raise ParseError("rows must be a nonempty list", "rows")
    grid = []
    for b, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 3:
            raise ParseError("each row must be a list of 3 counts", f"rows[{b}]")
        cleaned = []
        for a, c in enumerate(row):
            c = _require_int(c, f"rows[{b}][{a}]")
            if c < 0:
                raise ParseError(f"counts must be nonnegative, got {c}", f"rows[{b}][{a}]")
            cleaned.append(c)
        grid.append(cleaned)
    return SolutionArray.from_rows(base, grid)


def array_from_json(text: str, expected_k: int | None = None) -> SolutionArray:
    """Parse an array document; extra keys are ignored.

    Raises ParseError with a JSON-path-style location for malformed input
    and KMismatchError when expected_k disagrees with the document.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"offset {exc.pos}") from exc
    return array_from_dict(doc, expected_k)


def tree_to_json(tree: EnumerationTree) -> str:
    """Tree document: sorted node documents plus (child, parent, move) edges."""
    nodes = tree.nodes()
    index = {node.rows: i for i, node in enumerate(nodes)}
    edges = []
    for node in nodes:
        entry = tree.parent_of(node)
        if entry is not None:
            parent, move = entry
            edges.append(
                {"child": index[node.rows], "parent": index[parent.rows], "move": int(move)}
            )
    doc = {
        "k": tree.base.k,
        "nodes": [array_document(node) for node in nodes],
        "edges": edges,
    }
    return json.dumps(doc, indent=2)


def tree_to_dot(tree: EnumerationTree) -> str:
    """Graphviz digraph; edges run parent -> child labeled by move number.

    Node labels render the grid top row first, like the published figures;
    the four one-row solutions (no term divisible by k) are colored red.
    """
    nodes = tree.nodes()
    index = {node.rows: i for i, node in enumerate(nodes)}
    lines = ["digraph solutions {", "  node [shape=plaintext];"]
    for i, node in enumerate(nodes):
        label = "\\n".join(" ".join(map(str, row)) for row in reversed(node.rows))
        attrs = [f'label="{label}"']
        if not is_nontrivial(node):
            attrs.append("color=red")
            attrs.append("fontcolor=red")
        lines.append(f"  a{i} [{', '.join(attrs)}];")
    for node in nodes:
        entry = tree.parent_of(node)
        if entry is not None:
            parent, move = entry
            lines.append(f'  a{index[parent.rows]} -> a{index[node.rows]} [label="{int(move)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_count_table_csv(columns: Sequence[tuple[int, Sequence[int]]], n_max: int) -> str:
    """CSV with header "n,k=...,k=..." and one row per term count.

    Counts are plain integers, never with thousands separators.
    """
    header = "n," + ",".join(f"k={k}" for k, _ in columns)
    lines = [header]
    for n in range(1, n_max + 1):
        lines.append(f"{n}," + ",".join(str(col[n - 1]) for _, col in columns))
    return "\n".join(lines) + "\n"


def format_count_table_text(columns: Sequence[tuple[int, Sequence[int]]], n_max: int) -> str:
    """Aligned plain-text table of the same counts."""
    headers = ["n"] + [f"k={k}" for k, _ in columns]
    rows = [
        [str(n)] + [str(col[n - 1]) for _, col in columns] for n in range(1, n_max + 1)
    ]
    widths = [max(len(r[i]) for r in [headers] + rows) for i in range(len(headers))]
    out = []
    for r in [headers] + rows:
        out.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return "\n".join(out) + "\n"


def count_columns(
    bases: Iterable[Base], n_max: int, distinct: bool = False, threads: int = 1
) -> list[tuple[int, tuple[int, ...]]]:
    """One counted column per base, in the order given."""
    columns = []
    for base in bases:
        counts: LevelCounts = count_levels(base, n_max, threads=threads)
        col = counts.distinct_nontrivial if distinct else counts.nontrivial
        columns.append((base.k, col))
    return columns


def render_count_table(
    bases: Iterable[Base],
    n_max: int,
    distinct: bool = False,
    fmt: str = "csv",
    threads: int = 1,
) -> str:
    """Count nontrivial (or distinct nontrivial) solutions and format them."""
    columns = count_columns(bases, n_max, distinct=distinct, threads=threads)
    if fmt == "csv":
        return format_count_table_csv(columns, n_max)
    if fmt == "text":
        return format_count_table_text(columns, n_max)
    raise ValueError(f"unknown table format {fmt!r}")
