"""Columnar event table: one row per event, for boundary transfer and CSV.

Trace attributes are broadcast into "case:"-prefixed columns. Scalar cells
keep their native type; nested list/map attribute values are rendered as
canonical JSON text:

    list  -> [{"key": k, "value": <rendered>}, ...]   (document order)
    map   -> {k: <rendered>, ...}                      (document order)

Scalars inside a nested rendering become JSON natives; timestamps render
as ISO-8601 text and id values as their UUID text, so the rendering is
canonical but collapses those two kinds to text. nested_to_json and
nested_from_json are exact inverses for trees whose scalars are
JSON-stable (text, int, float, bool).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime

from .eventlog import AttrList, EventLog, XesId

_MANDATORY_FIRST = ("case:concept:name", "concept:name", "time:timestamp")

# Column kind lattice: identical kinds keep, int+float promotes to float,
# anything else degrades to text.
_KIND_OF_TYPE = {
    str: "text",
    XesId: "text",
    int: "integer",
    float: "float",
    bool: "boolean",
    datetime: "timestamp",
}


def _render_nested(value):
    if isinstance(value, AttrList):
        return [{"key": k, "value": _render_nested(v)} for k, v in value]
    if isinstance(value, dict):
        return {k: _render_nested(v) for k, v in value.items()}
    if isinstance(value, datetime):
        return value.isoformat()
    if isinstance(value, XesId):
        return str(value)
    return value


def nested_to_json(value) -> str:
    """Canonical JSON text for a nested attribute value."""
    return json.dumps(_render_nested(value), ensure_ascii=False, separators=(",", ":"))


def _decode_nested(obj):
    if isinstance(obj, list):
        out = AttrList()
        for item in obj:
            out.append((item["key"], _decode_nested(item["value"])))
        return out
    if isinstance(obj, dict):
        return {k: _decode_nested(v) for k, v in obj.items()}
    return obj


def nested_from_json(text: str):
    """Inverse of nested_to_json for JSON-stable scalar kinds."""
    return _decode_nested(json.loads(text))


@dataclass
class EventTable:
    """Homogeneous columns of equal length, one row per event."""

    names: list = field(default_factory=list)
    columns: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    rows: int = 0

    def column(self, name: str) -> list:
        return self.columns[name]

    def row(self, i: int) -> dict:
        return {name: self.columns[name][i] for name in self.names}

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.names)
            cols = [self.columns[n] for n in self.names]
            for i in range(self.rows):
                writer.writerow(
                    [
                        ""
                        if c[i] is None
                        else c[i].isoformat()
                        if isinstance(c[i], datetime)
                        else c[i]
                        for c in cols
                    ]
                )


def _cell_value(value):
    """Native scalar, or JSON text for nested values."""
    if isinstance(value, (AttrList, dict)):
        return nested_to_json(value)
    return value


def to_event_table(log: EventLog) -> EventTable:
    """Flatten a log into an EventTable.

    The column set is the union of keys over all events plus the
    broadcast "case:" columns; cells missing for a row are None. Column
    order: the mandatory trio first (when present), then first appearance.
    """
    names: list = []
    columns: dict = {}
    seen_types: dict = {}
    rows = 0

    for trace in log.traces:
        case_cells = [
            ("case:" + k, _cell_value(v)) for k, v in trace.attributes.items()
        ]
        for event in trace.events:
            for k, v in event.attributes.items():
                col = columns.get(k)
                if col is None:
                    col = columns[k] = [None] * rows
                    names.append(k)
                    seen_types[k] = set()
                v = _cell_value(v)
                seen_types[k].add(type(v))
                col.append(v)
            for k, v in case_cells:
                col = columns.get(k)
                if col is None:
                    col = columns[k] = [None] * rows
                    names.append(k)
                    seen_types[k] = set()
                seen_types[k].add(type(v))
                col.append(v)
            rows += 1
            for k in names:
                col = columns[k]
                if len(col) < rows:
                    col.append(None)

    kinds = {}
    for name in names:
        tset = seen_types[name]
        col_kinds = {_KIND_OF_TYPE.get(t, "text") for t in tset}
        if len(col_kinds) == 1:
            kind = col_kinds.pop()
        elif col_kinds == {"integer", "float"}:
            kind = "float"
            columns[name] = [None if v is None else float(v) for v in columns[name]]
        else:
            kind = "text"
            columns[name] = [
                None
                if v is None
                else v
                if isinstance(v, str)
                else v.isoformat()
                if isinstance(v, datetime)
                else json.dumps(v)
                if isinstance(v, bool)
                else str(v)
                for v in columns[name]
            ]
        kinds[name] = kind

    ordered = [n for n in _MANDATORY_FIRST if n in columns]
    ordered.extend(n for n in names if n not in _MANDATORY_FIRST)
    return EventTable(names=ordered, columns=columns, kinds=kinds, rows=rows)
