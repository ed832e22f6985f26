"""Text format for groups: permutation generators or explicit tables.

Format (UTF-8):
  line 1: ``perm <degree>``; each later non-comment line is one generator as
  space-separated images ``i0 i1 ... i(d-1)``.  ``#`` starts a comment.
  Alternative: line 1 ``table <n>`` followed by n lines of n product indices.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GroupFileError
from .groups import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    PermGenerators,
    group_from_perm_generators,
    group_from_table,
)

__all__ = ["PermGenerators", "parse_group_text", "load_group_file", "group_to_table_text"]


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def parse_group_text(text: str, name: str = "file", cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    lines = _content_lines(text)
    if not lines:
        raise GroupFileError("empty group file")
    header_line, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] not in ("perm", "table"):
        raise GroupFileError(f"header must be 'perm <degree>' or 'table <n>', got {header!r}", header_line)
    try:
        size = int(parts[1])
    except ValueError:
        raise GroupFileError(f"bad size {parts[1]!r} in header", header_line) from None
    if size < 1:
        raise GroupFileError(f"size must be positive, got {size}", header_line)

    if parts[0] == "perm":
        gens = []
        for lineno, line in lines[1:]:
            images = _int_row(line, lineno)
            if len(images) != size:
                raise GroupFileError(f"generator has {len(images)} images, expected {size}", lineno)
            if sorted(images) != list(range(size)):
                raise GroupFileError("generator is not a bijection on 0..degree-1", lineno)
            gens.append(tuple(images))
        return group_from_perm_generators(size, gens, name=name, cap=cap)

    rows = []
    body = lines[1:]
    if len(body) != size:
        lineno = body[-1][0] if body else header_line
        raise GroupFileError(f"table needs {size} rows, found {len(body)}", lineno)
    for lineno, line in body:
        row = _int_row(line, lineno)
        if len(row) != size:
            raise GroupFileError(f"table row has {len(row)} entries, expected {size}", lineno)
        if any(v < 0 or v >= size for v in row):
            raise GroupFileError("table entry out of range", lineno)
        rows.append(row)
    table = np.asarray(rows, dtype=np.int64)
    for lineno, row in zip((ln for ln, _ in body), rows):
        if len(set(row)) != size:
            raise GroupFileError("table row is not a permutation of 0..n-1", lineno)
    for col in range(size):
        if len(set(int(v) for v in table[:, col])) != size:
            raise GroupFileError(f"table column {col} is not a permutation", header_line)
    try:
        return group_from_table(table, name=name)
    except ValueError as exc:
        raise GroupFileError(str(exc), header_line) from None


def _int_row(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GroupFileError(f"non-integer token in {line!r}", lineno) from None


def group_to_table_text(g: FiniteGroup, max_order: int = 2048) -> str:
    """Serialize a group in the explicit-table format for reuse (the table
    has |G|^2 entries, so this is capped)."""
    import numpy as np

    from .errors import ResourceLimitError

    n = g.order
    if n > max_order:
        raise ResourceLimitError(
            f"table serialization of order {n} exceeds the cap {max_order}"
        )
    arange = np.arange(n, dtype=np.int64)
    lines = [f"# {g.name}", f"table {n}"]
    for a in range(n):
        row = g.mul_vec(a, arange)
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def load_group_file(path: str | Path, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise GroupFileError(f"cannot read group file {p}: {exc}") from None
    return parse_group_text(text, name=f"file:{p.name}", cap=cap)
