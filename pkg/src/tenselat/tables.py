"""Plain-text tables with a byte-stable rendering and cell-level diffs.

A table file is a sequence of sections::

    ## name
    row     | col1  col2
    --------+-----------
    label1  | v11   v12

Columns are padded to the widest cell, so rendering depends only on the
cell contents. Parsing a rendered section gives back the same table.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Table:
    """Named rows and columns of text cells."""

    name: str
    columns: list[str]
    rows: list[tuple[str, list[str]]] = field(default_factory=list)
    corner: str = ""

    def add(self, label: str, cells) -> None:
        cells = [str(c) for c in cells]
        if len(cells) != len(self.columns):
            raise ValueError(f"row {label!r} has {len(cells)} cells, expected {len(self.columns)}")
        self.rows.append((str(label), cells))

    @property
    def row_labels(self) -> list[str]:
        return [r for r, _ in self.rows]

    def cell(self, row: str, col: str) -> str | None:
        for r, cells in self.rows:
            if r == row:
                return cells[self.columns.index(col)] if col in self.columns else None
        return None

    def render(self) -> str:
        w0 = max([len(self.corner)] + [len(r) for r, _ in self.rows])
        widths = [
            max([len(c)] + [len(cells[k]) for _, cells in self.rows])
            for k, c in enumerate(self.columns)
        ]

        def line(head, cells):
            body = "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
            return f"{head.ljust(w0)} | {body}".rstrip()

        out = [f"## {self.name}", line(self.corner, self.columns)]
        out.append("-" * (w0 + 1) + "+" + "-" * (sum(widths) + 2 * max(len(widths) - 1, 0) + 1))
        out.extend(line(r, cells) for r, cells in self.rows)
        return "\n".join(out) + "\n"


def render_all(tables) -> str:
    return "\n".join(t.render() for t in tables)


def parse_tables(text: str) -> dict[str, Table]:
    """Inverse of :func:`render_all`; cells must not contain spaces."""
    out: dict[str, Table] = {}
    for block in text.split("## ")[1:]:
        lines = [ln for ln in block.splitlines() if ln.strip()]
        name = lines[0].strip()
        # the separator column is fixed by the header, so row labels may contain "|"
        bar = lines[1].index(" | ") + 1
        t = Table(name, lines[1][bar + 1:].split(), corner=lines[1][:bar].strip())
        for ln in lines[3:]:
            t.add(ln[:bar].strip(), ln[bar + 1:].split())
        out[name] = t
    return out


def diff_tables(golden: Table, computed: Table) -> list[str]:
    """Cell-level differences, one human-readable line each (empty if equal)."""
    diffs = []
    gcols, ccols = golden.columns, computed.columns
    for c in gcols:
        if c not in ccols:
            diffs.append(f"column {c}: missing from computed table")
    for c in ccols:
        if c not in gcols:
            diffs.append(f"column {c}: not in reference table")
    crows = dict(computed.rows)
    grows = dict(golden.rows)
    for r, cells in golden.rows:
        if r not in crows:
            diffs.append(f"row {r}: missing from computed table")
            continue
        for c, v in zip(gcols, cells):
            if c in ccols:
                got = crows[r][ccols.index(c)]
                if got != v:
                    diffs.append(f"cell ({r}, {c}): reference {v}, computed {got}")
    for r, _ in computed.rows:
        if r not in grows:
            diffs.append(f"row {r}: not in reference table")
    if not diffs and (golden.row_labels != computed.row_labels or gcols != ccols):
        diffs.append("same cells in a different row/column order")
    return diffs
