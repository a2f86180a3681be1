"""Report assembly and emission.

Reports are plain dicts built in a fixed order, so a JSON dump is
byte-identical across runs with the same catalog, caps and seed.  Wall
times are never part of the default payload for that reason; the CLI can
opt in via --timing.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

SCHEMA_VERSION = 1


def build_report(command: str, params, suites: list[dict]) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA_VERSION,
        "tool": f"rloops {__version__}",
        "command": command,
        "params": {
            "max_order": params.max_order,
            "max_transversals": params.max_transversals,
            "sample": params.sample,
            "seed": params.seed,
        },
        "suites": suites,
        "verdict": "fail" if any(s["verdict"] == "fail" for s in suites) else "pass",
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


_ROW_COLUMNS = (
    "group", "order", "subgroup", "index", "mode", "transversals", "generating",
    "solvable_loops", "solvable_generating", "qualifying", "classes", "checks",
    "generating_checked", "found", "flag", "violations",
)


def render_text(report: dict) -> str:
    lines = [
        f"{report['tool']}  command: {report['command']}",
        f"params: {report['params']}",
        "",
    ]
    for suite in report["suites"]:
        lines.append(f"== suite {suite['suite']} ({suite['verdict'].upper()}) ==")
        lines.append(f"   params: {suite['params']}")
        rows = suite["rows"]
        columns = [c for c in _ROW_COLUMNS if any(c in r for r in rows)]
        if rows and columns:
            table = [[_cell(r.get(c)) for c in columns] for r in rows]
            widths = [
                max(len(col), *(len(row[i]) for row in table))
                for i, col in enumerate(columns)
            ]
            lines.append("   " + "  ".join(c.ljust(w) for c, w in zip(columns, widths)))
            for row in table:
                lines.append("   " + "  ".join(v.ljust(w) for v, w in zip(row, widths)))
        lines.append(f"   summary: {suite['summary']}")
        if suite["counterexamples"]:
            lines.append(f"   counterexamples ({len(suite['counterexamples'])}):")
            for w in suite["counterexamples"]:
                lines.append(f"     - {w}")
        lines.append("")
    lines.append(f"overall verdict: {report['verdict'].upper()}")
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def emit_report(report: dict, fmt: str, output: Optional[str] = None) -> str:
    """Render the report and write it to `output` (or return it)."""
    if fmt == "json":
        text = render_json(report)
    elif fmt == "text":
        text = render_text(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if output:
        Path(output).write_text(text)
    return text
