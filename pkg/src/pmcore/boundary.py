"""Flat, copy-based call surface for hosting pmcore behind a foreign-function
mechanism.

Everything crossing this layer is UTF-8 JSON text or an integer handle.
Projections are deep-copied on decode, so callers may mutate or free
their buffers immediately after a call. Loaded logs are retained in a
registry keyed by opaque integer handles; handles are never reused, so a
stale handle is always detected instead of silently aliasing fresh data.
"""

from __future__ import annotations

import json
import threading

from .alphappp import discover, parse_variant
from .errors import (
    DoubleDestroyError,
    InvariantViolationError,
    PmCoreError,
    SchemaViolationError,
    UnknownHandleError,
)
from .eventlog import ActivityProjection, EventLog
from .petri import to_json as net_to_json


def encode_projection(proj: ActivityProjection) -> str:
    """Compact JSON for a projection: {"alphabet": [...], "variants": [[[i...], n], ...]}."""
    doc = {
        "alphabet": list(proj.alphabet),
        "variants": [[list(seq), count] for seq, count in proj.variants],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def _expect(cond: bool, detail: str) -> None:
    if not cond:
        raise SchemaViolationError(detail)


def decode_projection(text: str) -> ActivityProjection:
    """Parse and re-validate projection JSON into an independent copy.

    Raises SchemaViolation for shape problems and InvariantViolation for
    well-shaped but inconsistent data (index outside the alphabet,
    negative count).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolationError(f"invalid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "top level must be an object")
    _expect(
        doc.keys() >= {"alphabet", "variants"},
        "missing fields: alphabet and variants are required",
    )
    alphabet = doc["alphabet"]
    variants = doc["variants"]
    _expect(isinstance(alphabet, list), "alphabet must be an array")
    for label in alphabet:
        _expect(isinstance(label, str), "alphabet entries must be text")
    _expect(isinstance(variants, list), "variants must be an array")
    size = len(alphabet)
    decoded = []
    for i, entry in enumerate(variants):
        _expect(
            isinstance(entry, list) and len(entry) == 2,
            f"variants[{i}] must be [sequence, count]",
        )
        seq, count = entry
        _expect(isinstance(seq, list), f"variants[{i}] sequence must be an array")
        for idx in seq:
            _expect(
                isinstance(idx, int) and not isinstance(idx, bool),
                f"variants[{i}] indices must be integers",
            )
            if not 0 <= idx < size:
                raise InvariantViolationError(
                    f"variants[{i}] references activity index {idx} "
                    f"outside alphabet of size {size}"
                )
        _expect(
            isinstance(count, int) and not isinstance(count, bool),
            f"variants[{i}] count must be an integer",
        )
        if count < 1:
            raise InvariantViolationError(
                f"variants[{i}] count must be >= 1, got {count}"
            )
        decoded.append((tuple(seq), count))
    return ActivityProjection(list(alphabet), decoded)


class HandleRegistry:
    """Thread-safe store of retained logs keyed by never-reused integer ids.

    Ids start at 1; 0 is never issued. A destroyed id stays known so a
    second destroy or a late resolve reports the precise misuse instead
    of hitting fresh data.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._live: dict = {}
        self._destroyed: set = set()
        self._next_id = 1

    def register(self, log: EventLog) -> int:
        with self._lock:
            handle = self._next_id
            self._next_id += 1
            self._live[handle] = log
        return handle

    def resolve(self, handle) -> EventLog:
        with self._lock:
            log = self._live.get(handle)
            if log is not None:
                return log
            if handle in self._destroyed:
                raise UnknownHandleError(f"handle {handle} was destroyed")
            raise UnknownHandleError(f"handle {handle} was never issued")

    def destroy(self, handle) -> None:
        with self._lock:
            if handle in self._live:
                del self._live[handle]
                self._destroyed.add(handle)
                return
            if handle in self._destroyed:
                raise DoubleDestroyError(f"handle {handle} already destroyed")
            raise UnknownHandleError(f"handle {handle} was never issued")

    @property
    def live_count(self) -> int:
        with self._lock:
            return len(self._live)

    @property
    def next_id(self) -> int:
        with self._lock:
            return self._next_id


_default_registry = HandleRegistry()


def register_log(log: EventLog) -> int:
    return _default_registry.register(log)


def resolve_log(handle) -> EventLog:
    return _default_registry.resolve(handle)


def destroy_log(handle) -> None:
    _default_registry.destroy(handle)


def error_json(exc: Exception) -> str:
    """Structured error payload: {"error": code, "detail": text}."""
    code = exc.code if isinstance(exc, PmCoreError) else "Error"
    return json.dumps(
        {"error": code, "detail": str(exc)}, ensure_ascii=False, separators=(",", ":")
    )


def discover_via_boundary(projection_json: str, variant: str) -> str:
    """Single-call discovery: projection JSON in, net JSON out.

    Never raises on bad input; failures come back as error JSON so a
    thin foreign-language wrapper only translates, never interprets.
    """
    try:
        proj = decode_projection(projection_json)
        cfg = parse_variant(variant)
        return net_to_json(discover(proj, cfg))
    except PmCoreError as exc:
        return error_json(exc)
