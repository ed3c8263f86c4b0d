"""Line-delimited JSON server over stdio.

Run as `python -m pmcore.ipc`. Each request is one JSON object per line:

    {"id": <any>, "op": "<name>", ...parameters}

and each reply mirrors the id:

    {"id": <any>, "ok": true, "result": {...}}
    {"id": <any>, "ok": false, "error": "<code>", "detail": "<text>"}

This realizes the flat call surface for host runtimes that prefer
spawning a subprocess over in-process embedding: every operation is one
request/reply pair carrying copied JSON data or an integer handle, so a
foreign wrapper stays free of core logic. The process exits when stdin
closes.
"""

from __future__ import annotations

import json
import sys
from datetime import datetime

from . import boundary, xes
from .alphappp import discover, parse_variant
from .errors import PmCoreError, SchemaViolationError
from .eventlog import log_stats, project
from .petri import to_json as net_to_json
from .table import to_event_table


def _jsonable_cell(value):
    if isinstance(value, datetime):
        return value.isoformat()
    return value


def _table_payload(log) -> dict:
    table = to_event_table(log)
    columns = {}
    for name in table.names:
        col = table.columns[name]
        if table.kinds[name] == "timestamp":
            col = [None if v is None else v.isoformat() for v in col]
        columns[name] = col
    return {
        "names": table.names,
        "kinds": table.kinds,
        "rows": table.rows,
        "columns": columns,
        "log_attributes": {
            k: _jsonable_cell(v) for k, v in log.attributes.items()
            if not isinstance(v, (list, dict))
        },
    }


def _stats_payload(stats) -> dict:
    return {
        "events": stats.events,
        "activities": stats.activities,
        "cases": stats.cases,
        "variants": stats.variants,
    }


def _projection_payload(proj) -> dict:
    return json.loads(boundary.encode_projection(proj))


def _need(params: dict, key: str):
    if key not in params:
        raise SchemaViolationError(f"missing parameter {key!r}")
    return params[key]


def handle_request(params: dict) -> dict:
    """Dispatch one decoded request to its operation; returns the result value."""
    op = _need(params, "op")
    if op == "ping":
        return {"pong": True}
    if op == "load_log":
        log = xes.detect_and_parse(_need(params, "path"))
        return {"handle": boundary.register_log(log)}
    if op == "unload_log":
        boundary.destroy_log(_need(params, "handle"))
        return {}
    if op == "log_stats":
        log = boundary.resolve_log(_need(params, "handle"))
        return _stats_payload(log_stats(log))
    if op == "project":
        log = boundary.resolve_log(_need(params, "handle"))
        return _projection_payload(project(log))
    if op == "project_path":
        log = xes.detect_and_parse(_need(params, "path"))
        return _projection_payload(project(log))
    if op == "read_table":
        log = xes.detect_and_parse(_need(params, "path"))
        return _table_payload(log)
    if op == "discover":
        proj = boundary.decode_projection(json.dumps(_need(params, "projection")))
        cfg = parse_variant(_need(params, "variant"))
        return json.loads(net_to_json(discover(proj, cfg)))
    if op == "roundtrip_projection":
        proj = boundary.decode_projection(json.dumps(_need(params, "projection")))
        return _projection_payload(proj)
    raise SchemaViolationError(f"unknown op {op!r}")


def _error_reply(rid, exc: Exception) -> dict:
    if isinstance(exc, PmCoreError):
        code = exc.code
    elif isinstance(exc, OSError):
        code = "Io"
    else:
        code = "Error"
    return {"id": rid, "ok": False, "error": code, "detail": str(exc)}


def serve(stdin=None, stdout=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        rid = None
        try:
            try:
                params = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaViolationError(f"invalid request JSON: {exc}") from exc
            if not isinstance(params, dict):
                raise SchemaViolationError("request must be a JSON object")
            rid = params.get("id")
            reply = {"id": rid, "ok": True, "result": handle_request(params)}
        except Exception as exc:  # every failure becomes a structured reply
            reply = _error_reply(rid, exc)
        stdout.write(json.dumps(reply, ensure_ascii=False, separators=(",", ":")))
        stdout.write("\n")
        stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(serve())
