"""
Rendering of report records as JSON lines, CSV or human-readable text.
"""

import csv
import io
import json
from typing import Any, Dict, Iterable, List, Sequence

FORMATS = ("json", "csv", "human")

# Fixed CSV columns per record kind; nested values are JSON-encoded
CSV_COLUMNS: Dict[str, List[str]] = {
    "verdict": ["p", "m", "e", "r", "a_exp", "a", "method", "is_pp", "witness"],
    "claim": ["claim_id", "p", "m", "e", "cases_run", "cases_agreeing", "disagreements", "notes", "wall_time_ms"],
    "hw": [
        "q", "e", "r", "d", "applicable", "gcd_branch", "bound_lower", "exceeds_q",
        "predicts_nonpp", "lambda_check", "radicand_ok", "confirmed", "a_exps",
    ],
    "field": ["p", "n", "order", "modulus", "primitive", "group_order", "factorization", "q", "d"],
    "certificate": ["N", "alpha", "beta", "gamma", "solutions", "n1", "value", "status", "methods", "recipe"],
}


def to_json_line(record: Dict[str, Any]) -> str:
    return json.dumps(record, separators=(", ", ": "))


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_csv(records: Sequence[Dict[str, Any]], kind: str) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    columns = CSV_COLUMNS[kind]
    writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_cell(record.get(column)) for column in columns])
    return buffer.getvalue()


def to_human(record: Dict[str, Any], indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in record.items():
        if isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.append(to_human(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}: ({len(value)})")
            for item in value:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def render(records: Iterable[Dict[str, Any]], kind: str, fmt: str) -> str:
    """Render records in the requested format; output ends with a newline unless empty."""
    records = list(records)
    if fmt == "json":
        return "".join(to_json_line(record) + "\n" for record in records)
    if fmt == "csv":
        return to_csv(records, kind)
    if fmt == "human":
        return "".join(to_human(record) + "\n\n" for record in records)
    raise ValueError(f"unknown format '{fmt}'")
