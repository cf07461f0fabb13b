"""Deterministic serialization of result tables (CSV and JSON).

All numerics are rendered with 10 significant digits ('%.10g'), which both
formats share, so CSV and JSON payloads parse to identical numbers and a
serialize -> parse -> serialize round trip is byte-identical. Nothing
machine- or time-dependent is ever written.
"""

import json
from dataclasses import dataclass, field

from . import __version__

KINDS = ("table", "curve_scan", "profile", "truncation_roots", "verify_report")


def format_number(value):
    """Canonical 10-significant-digit rendering used by every writer."""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    x = float(value)
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite value {value!r} cannot be serialized")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return "%.10g" % x


def _cell(value):
    text = format_number(value)
    if any(ch in text for ch in (",", "\n", "\r")):
        raise ValueError(f"cell {text!r} contains a CSV delimiter")
    return text


@dataclass
class OutputRecord:
    """One table of named numeric columns plus metadata."""

    kind: str
    metadata: dict
    columns: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")

    def stringified(self):
        """Copy with every metadata value and cell in canonical string form."""
        return OutputRecord(
            kind=self.kind,
            metadata={str(k): _cell(v) for k, v in self.metadata.items()},
            columns=[str(c) for c in self.columns],
            rows=[[_cell(v) for v in row] for row in self.rows],
        )

    def numeric_rows(self):
        """Rows parsed to floats (empty cells become nan)."""
        out = []
        for row in self.stringified().rows:
            out.append([float(c) if c != "" else float("nan") for c in row])
        return out


def default_metadata(**entries):
    meta = {"tool_version": __version__}
    meta.update(entries)
    return meta


def render_csv(record):
    rec = record.stringified()
    lines = [f"# kind = {rec.kind}"]
    for key, value in rec.metadata.items():
        lines.append(f"# {key} = {value}")
    lines.append(",".join(rec.columns))
    for row in rec.rows:
        if len(row) != len(rec.columns):
            raise ValueError(f"row width {len(row)} != {len(rec.columns)} columns")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def render_json(record):
    rec = record.stringified()
    payload = {
        "kind": rec.kind,
        "metadata": rec.metadata,
        "columns": rec.columns,
        "rows": rec.rows,
    }
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"


def _write(path, text):
    try:
        with open(path, "w", encoding="ascii", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write record to {path}: {exc}") from exc


def write_csv(record, path):
    _write(path, render_csv(record))


def write_json(record, path):
    _write(path, render_json(record))


def parse_csv(text):
    metadata = {}
    kind = None
    header = None
    rows = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            key = key.strip()
            value = value.strip()
            if key == "kind":
                kind = value
            else:
                metadata[key] = value
        elif header is None:
            header = line.split(",")
        elif line:
            rows.append(line.split(","))
    if kind is None or header is None:
        raise ValueError("not a record: missing '# kind = ...' line or header")
    return OutputRecord(kind=kind, metadata=metadata, columns=header, rows=rows)


def read_csv(path):
    with open(path, "r", encoding="ascii", newline="") as handle:
        return parse_csv(handle.read())


def parse_json(text):
    payload = json.loads(text)
    return OutputRecord(
        kind=payload["kind"],
        metadata=dict(payload["metadata"]),
        columns=list(payload["columns"]),
        rows=[list(row) for row in payload["rows"]],
    )


def read_json(path):
    with open(path, "r", encoding="ascii", newline="") as handle:
        return parse_json(handle.read())
