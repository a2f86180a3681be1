"""The .cay table file format.

Line 1 holds the order n, the next n lines hold n space-separated entries
each (row i lists the products i*j).  Element 0 must be the identity.
Lines starting with '#' and blank lines are ignored; '#' also starts a
trailing comment.
"""

from __future__ import annotations

from pathlib import Path

from . import groups, loops
from .errors import CayParseError
from .groups import FiniteGroup
from .loops import RightLoop


def _parse_table(text: str) -> list[list[int]]:
    rows: list[list[int]] = []
    n = None
    n_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise CayParseError(f"expected the order, got {line!r}", lineno)
            if n <= 0:
                raise CayParseError(f"order must be positive, got {n}", lineno)
            n_line = lineno
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise CayParseError(f"non-integer entry in {line!r}", lineno)
        if len(row) != n:
            raise CayParseError(f"row has {len(row)} entries, expected {n}", lineno)
        for x in row:
            if not 0 <= x < n:
                raise CayParseError(f"entry {x} out of range 0..{n - 1}", lineno)
        rows.append(row)
        if len(rows) > n:
            raise CayParseError(f"more than {n} table rows", lineno)
    if n is None:
        raise CayParseError("empty file", 1)
    if len(rows) != n:
        raise CayParseError(f"found {len(rows)} rows, expected {n}", n_line)
    return rows


def load_group_file(path: str | Path) -> FiniteGroup:
    return groups.validate_group(_parse_table(Path(path).read_text()))


def load_loop_file(path: str | Path) -> RightLoop:
    return loops.validate_right_loop(_parse_table(Path(path).read_text()))


def dump_table(table, header: str = "") -> str:
    lines = [f"# {header}"] if header else []
    lines.append(str(len(table)))
    lines.extend(" ".join(str(x) for x in row) for row in table)
    return "\n".join(lines) + "\n"


def parse_subgroup_arg(g: FiniteGroup, arg: str) -> groups.SubgroupRef:
    """Parse a comma-separated index list into a validated subgroup."""
    try:
        elems = [int(tok) for tok in arg.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"bad subgroup spec {arg!r}: expected comma-separated indices")
    return groups.subgroup(g, elems)
