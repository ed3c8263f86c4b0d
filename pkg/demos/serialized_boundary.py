"""The serialized boundary: JSON in, JSON out, handles for retained logs.

This surface exists for hosting pmcore behind another runtime. Shown
here in-process and over the stdio server.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from pmcore.boundary import (
    decode_projection,
    destroy_log,
    discover_via_boundary,
    encode_projection,
    register_log,
    resolve_log,
)
from pmcore.errors import DoubleDestroyError
from pmcore.eventlog import ActivityProjection, log_stats
from pmcore.xes import parse_xes

proj = ActivityProjection(
    alphabet=["a", "b", "c"],
    variants=[((0, 1, 2), 5), ((0, 2), 2)],
)

# projections cross as compact JSON
text = encode_projection(proj)
print("projection:", text)
assert decode_projection(text).variants == proj.variants

# one call in, net or error out; never an exception
net_json = discover_via_boundary(text, "1.0|b1.0|t0.0|r0.8")
print("net:", net_json[:100], "...")

for bad_proj, bad_variant in [
    ("{broken", "1.0|b1.0|t0.0|r0.8"),
    (text, "what|ever"),
    ('{"alphabet":["a"],"variants":[[[9],1]]}', "1.0|b1.0|t0.0|r0.8"),
]:
    print("error: ", discover_via_boundary(bad_proj, bad_variant))

# retained logs are integer handles, never object references
log = parse_xes(
    b'<log><trace><event><string key="concept:name" value="a"/></event></trace></log>'
)
h = register_log(log)
print(f"\nhandle {h}: {log_stats(resolve_log(h))}")
destroy_log(h)
try:
    destroy_log(h)
except DoubleDestroyError as exc:
    print(f"double destroy detected: {exc}")

# the same surface over a subprocess: one JSON object per line
print("\n--- stdio server session")
with tempfile.TemporaryDirectory() as tmp:
    xes_path = Path(tmp) / "tiny.xes"
    xes_path.write_bytes(
        b'<log><trace><event><string key="concept:name" value="a"/></event>'
        b'<event><string key="concept:name" value="b"/></event></trace></log>'
    )
    requests = [
        {"id": 1, "op": "ping"},
        {"id": 2, "op": "load_log", "path": str(xes_path)},
        {"id": 3, "op": "log_stats", "handle": 1},
        {"id": 4, "op": "project", "handle": 1},
        {"id": 5, "op": "unload_log", "handle": 1},
        {"id": 6, "op": "unload_log", "handle": 1},
    ]
    out = subprocess.run(
        [sys.executable, "-m", "pmcore.ipc"],
        input="".join(json.dumps(r) + "\n" for r in requests),
        capture_output=True,
        text=True,
    ).stdout
    for line in out.splitlines():
        print(" ", line)
