"""
Plain-text tables for the CLI: raw rows, report checks and pandas frames.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

import pandas as pd


def table_draw(
    data: Sequence[Sequence[object]],
    corner: str = "+",
    h_line: str = "-",
    v_line: str = "|",
    space: str = " ",
    has_header: bool = True,
) -> str:
    """
    Render rows as a boxed table.

    - data : rows of cells, all of the same length; cells are str()-ed
    - has_header : the first row is a header and gets a spacer line under it
    """
    rows: List[List[str]] = [[str(cell) for cell in row] for row in data]
    if not rows:
        return ""
    col_count = len(rows[0])
    if any(len(row) != col_count for row in rows):
        raise ValueError("every row needs the same number of cells")
    col_widths = [max(len(row[i]) for row in rows) + 1 for i in range(col_count)]

    out = line(col_widths, corner, h_line)
    for i, row in enumerate(rows):
        out += v_line + v_line.join(cell.ljust(width) for cell, width in zip(row, col_widths)) + v_line + "\n"
        if has_header and i == 0:
            out += line(col_widths, v_line, space)
        out += line(col_widths, corner, h_line)
    return out


def line(col_widths: Iterable[int], corner: str, h_line: str) -> str:
    return corner + corner.join(h_line * width for width in col_widths) + corner + "\n"


def frame_table(frame: pd.DataFrame) -> str:
    header = [tuple(str(c) for c in frame.columns)]
    body = [tuple(row) for row in frame.itertuples(index=False, name=None)]
    return table_draw(header + body)


def checks_table(checks: Iterable) -> str:
    rows: List[Sequence[object]] = [("Check", "Result", "Detail")]
    for c in checks:
        rows.append((c.name, "pass" if c.passed else "FAIL", c.detail))
    return table_draw(rows)
