"""Tabular exports in CSV or structured-text (JSON) form."""

import csv
import io
import json
from typing import Any, Literal, Mapping, Sequence

TableFormat = Literal["csv", "structured-text"]
TABLE_FORMATS = ("csv", "structured-text")
EXTENSIONS = {"csv": "csv", "structured-text": "json"}


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_records(
    records: Sequence[Mapping[str, Any]],
    fieldnames: Sequence[str],
    format: TableFormat = "csv",
) -> str:
    """Formats records as a table.

    Args:
        records: one mapping per row.
        fieldnames: columns, in output order.
        format: "csv" (header plus one line per record) or "structured-text"
            (indented JSON list). Defaults to "csv".

    Returns:
        the formatted table.
    """
    if format == "structured-text":
        rows = [{name: record.get(name) for name in fieldnames} for record in records]
        return json.dumps(rows, indent=4) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(fieldnames)
    for record in records:
        writer.writerow([_cell(record.get(name)) for name in fieldnames])
    return buffer.getvalue()


def table_file_name(stem: str, format: TableFormat = "csv") -> str:
    """File name of a table, e.g. ``configurations.csv`` or ``configurations.json``."""
    return f"{stem}.{EXTENSIONS[format]}"
