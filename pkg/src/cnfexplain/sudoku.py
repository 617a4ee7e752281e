"""Sudoku-to-CNF encoding with the pairwise at-most-one scheme.

One boolean variable per (cell, value).  Clauses: every cell holds at least
one value, no cell holds two, and no row, column or box repeats a value.
Givens become the initial interpretation, not clauses, so the explanation
engine can use them as facts.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import ContradictionError, ParseError
from .instances import InstanceFile

Grid = list[list[int]]  # 0 for blank


def cell_value_var(n: int, row: int, col: int, value: int) -> int:
    """Variable for 'cell (row, col) holds value'; rows/cols 0-based, values 1..n."""
    return (row * n + col) * n + value


def encode_sudoku(grid: Grid, name: str | None = None) -> InstanceFile:
    n = len(grid)
    if n not in (4, 9) or any(len(row) != n for row in grid):
        raise ValueError("grid must be 4x4 or 9x9")
    box = int(math.isqrt(n))
    _check_givens(grid, n, box)
    clauses: list[list[int]] = []
    for r in range(n):
        for c in range(n):
            clauses.append([cell_value_var(n, r, c, d) for d in range(1, n + 1)])
            for d1 in range(1, n + 1):
                for d2 in range(d1 + 1, n + 1):
                    clauses.append([-cell_value_var(n, r, c, d1), -cell_value_var(n, r, c, d2)])
    units: list[list[tuple[int, int]]] = []
    for r in range(n):
        units.append([(r, c) for c in range(n)])
    for c in range(n):
        units.append([(r, c) for r in range(n)])
    for br in range(0, n, box):
        for bc in range(0, n, box):
            units.append([(br + i, bc + j) for i in range(box) for j in range(box)])
    for cells in units:
        for d in range(1, n + 1):
            for k1 in range(len(cells)):
                for k2 in range(k1 + 1, len(cells)):
                    r1, c1 = cells[k1]
                    r2, c2 = cells[k2]
                    clauses.append([-cell_value_var(n, r1, c1, d), -cell_value_var(n, r2, c2, d)])
    givens = frozenset(
        cell_value_var(n, r, c, grid[r][c])
        for r in range(n)
        for c in range(n)
        if grid[r][c]
    )
    count = len(givens)
    inst = InstanceFile(name or f"sudoku-{n}x{n}-{count}givens", n * n * n)
    for cl in clauses:
        inst.clauses.append(frozenset(cl))
        inst.weights.append(None)
        inst.groups.append("rules")
    inst.initial = givens
    return inst


def _check_givens(grid: Grid, n: int, box: int) -> None:
    for r in range(n):
        for c in range(n):
            v = grid[r][c]
            if not 0 <= v <= n:
                raise ValueError(f"cell ({r},{c}) holds {v}, outside 0..{n}")
    seen: dict[tuple[str, int, int], tuple[int, int]] = {}
    for r in range(n):
        for c in range(n):
            v = grid[r][c]
            if not v:
                continue
            b = (r // box) * box + c // box
            for key in (("row", r, v), ("col", c, v), ("box", b, v)):
                if key in seen:
                    raise ContradictionError(
                        f"value {v} repeats in {key[0]} {key[1]} at {seen[key]} and ({r},{c})"
                    )
                seen[key] = (r, c)


def parse_grid(text: str, source: str = "<string>") -> Grid:
    """Rows of digits; '.' or '0' marks a blank.  Cells may be space-separated."""
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split() if " " in line else list(line)
        row = []
        for tok in tokens:
            if tok == ".":
                row.append(0)
            else:
                try:
                    row.append(int(tok))
                except ValueError:
                    raise ParseError(f"bad cell {tok!r}", lineno)
        rows.append(row)
    n = len(rows)
    if n not in (4, 9) or any(len(r) != n for r in rows):
        raise ParseError(f"expected a square 4x4 or 9x9 grid, got {n} rows in {source}")
    return rows


def load_grid(path: str | Path) -> Grid:
    return parse_grid(Path(path).read_text(), str(path))
