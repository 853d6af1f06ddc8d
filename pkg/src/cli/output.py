"""
Result Writers
============================

JSON and CSV rendering of command results. JSON floats use Python's shortest
round-trip repr; CSV floats use CSV_FLOAT_DIGITS significant digits. CSV
output ends with a `# {json}` footer line when the command has a summary.
"""

import csv
import io
import json
from typing import Any, Optional, TextIO

from src.config import CSV_FLOAT_DIGITS


def _csv_cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return f'{value:.{CSV_FLOAT_DIGITS}g}'
    if isinstance(value, (list, tuple)):
        return ';'.join(_csv_cell(v) for v in value)
    return str(value)


def render_csv(rows: list[dict[str, Any]], summary: Optional[dict[str, Any]] = None,
               header: Optional[list[str]] = None) -> str:
    """
    Header line, one line per row, optional summary footer. The header comes
    from the first row unless given explicitly (needed for empty tables).
    """
    header = header or (list(rows[0].keys()) if rows else [])
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    if header:
        writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in header])
    if summary is not None:
        buffer.write(f"# {json.dumps(summary, separators=(',', ':'))}\n")
    return buffer.getvalue()


def render_json(command: str, rows: list[dict[str, Any]], summary: Optional[dict[str, Any]] = None) -> str:
    document = {'command': command, 'rows': rows}
    if summary is not None:
        document['summary'] = summary
    return json.dumps(document, indent=2) + '\n'


def render(command: str, fmt: str, rows: list[dict[str, Any]], summary: Optional[dict[str, Any]] = None,
           header: Optional[list[str]] = None) -> str:
    if fmt == 'json':
        return render_json(command, rows, summary)
    return render_csv(rows, summary, header)


def write_output(text: str, path: Optional[str], stream: TextIO) -> None:
    """
    Write to path (replacing it) or to the given stream.
    """
    if path is None:
        stream.write(text)
        stream.flush()
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
