"""Deterministic CSV / JSON-lines report writers."""
from __future__ import annotations

import json


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(fields, rows) -> str:
    lines = [",".join(fields)]
    for row in rows:
        lines.append(",".join(format_cell(row.get(f)) for f in fields))
    return "\n".join(lines) + "\n"


def rows_to_jsonl(rows) -> str:
    return "".join(json.dumps(row, sort_keys=True) + "\n" for row in rows)
