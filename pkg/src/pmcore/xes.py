"""Streaming XES importer for plain and gzip-compressed event logs.

The importer walks the document with ElementTree's incremental parser and
releases each <trace> subtree as soon as it has been converted, so peak
memory tracks the size of the resulting EventLog rather than the XML DOM.

XES quirks handled here:
  * gzip is detected by magic bytes, never by file extension;
  * dirty scalar values (dates above all) fall back to text attributes by
    default instead of failing a multi-hundred-MB import near the end;
  * <list> children keep document order and may repeat keys, <container>
    children form a keyed map (last key wins); a legacy <values> wrapper
    inside <list> is tolerated;
  * classifier key lists may contain single-quoted keys with spaces;
  * nested attributes hanging off scalar attributes (pre-IEEE legacy) are
    not modelled and are skipped.
"""

from __future__ import annotations

import gzip
import io
import os
import xml.etree.ElementTree as ET
import zlib
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import (
    CorruptArchiveError,
    DepthExceededError,
    InvalidAttributeError,
    MalformedXmlError,
    NotGzipError,
)
from .eventlog import AttrList, Event, EventLog, Trace, XesId

_UTC = timezone.utc
_GZIP_MAGIC = b"\x1f\x8b"

_SCALAR_TAGS = ("string", "date", "int", "float", "boolean", "id")


@dataclass
class XesImportOptions:
    """Importer knobs.

    sort_events_by_time re-sorts each trace by "time:timestamp" (stable;
    events without a timestamp keep their relative order at the front).
    date_fallback_to_text keeps unparseable scalar values as text instead
    of raising InvalidAttributeError.
    """

    sort_events_by_time: bool = False
    date_fallback_to_text: bool = True
    max_nesting_depth: int = 64

    def __post_init__(self):
        if self.max_nesting_depth < 1:
            raise ValueError("max_nesting_depth must be >= 1")


def _parse_timestamp(text: str) -> datetime:
    """ISO-8601 to a UTC datetime truncated to millisecond precision."""
    try:
        dt = datetime.fromisoformat(text)
    except ValueError:
        # Python 3.10 fromisoformat rejects the Zulu suffix.
        dt = datetime.fromisoformat(text.strip().replace("Z", "+00:00").replace("z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=_UTC)
    else:
        dt = dt.astimezone(_UTC)
    us = dt.microsecond
    if us % 1000:
        dt = dt.replace(microsecond=us - us % 1000)
    return dt


def _scalar_fallback(opts: XesImportOptions, tag: str, key, raw):
    if opts.date_fallback_to_text:
        return raw if raw is not None else ""
    raise InvalidAttributeError(f"cannot parse <{tag}> attribute {key!r}: {raw!r}")


def _attr_value(elem, opts: XesImportOptions, depth: int, nslen: int = 0):
    """Convert one attribute element; recurses into list/container."""
    tag = elem.tag[nslen:] if nslen else elem.tag
    raw = elem.get("value")
    if tag == "string":
        return raw if raw is not None else ""
    if tag == "date":
        try:
            return _parse_timestamp(raw)
        except (ValueError, AttributeError, TypeError):
            return _scalar_fallback(opts, tag, elem.get("key"), raw)
    if tag == "int":
        try:
            return int(raw)
        except (ValueError, TypeError):
            return _scalar_fallback(opts, tag, elem.get("key"), raw)
    if tag == "float":
        try:
            return float(raw)
        except (ValueError, TypeError):
            return _scalar_fallback(opts, tag, elem.get("key"), raw)
    if tag == "boolean":
        if raw == "true":
            return True
        if raw == "false":
            return False
        return _scalar_fallback(opts, tag, elem.get("key"), raw)
    if tag == "id":
        return XesId(raw if raw is not None else "")
    if tag == "list":
        if depth >= opts.max_nesting_depth:
            raise DepthExceededError(f"attribute nesting exceeds {opts.max_nesting_depth}")
        out = AttrList()
        for child in elem:
            ctag = child.tag[nslen:] if nslen else child.tag
            if ctag == "values":  # OpenXES legacy wrapper
                for sub in child:
                    out.append((sub.get("key", ""), _attr_value(sub, opts, depth + 1, nslen)))
            else:
                out.append((child.get("key", ""), _attr_value(child, opts, depth + 1, nslen)))
        return out
    if tag == "container":
        if depth >= opts.max_nesting_depth:
            raise DepthExceededError(f"attribute nesting exceeds {opts.max_nesting_depth}")
        return {child.get("key", ""): _attr_value(child, opts, depth + 1, nslen) for child in elem}
    # Unknown attribute kind: keep whatever textual value it declares.
    return raw if raw is not None else ""


def _attrs_of(elem, opts: XesImportOptions, nslen: int) -> dict:
    attrs = {}
    for child in elem:
        key = child.get("key")
        if key is None:
            continue
        attrs[key] = _attr_value(child, opts, 1, nslen)
    return attrs


def _split_classifier_keys(spec: str) -> list:
    """Tokenize a classifier keys attribute; 'quoted keys' may hold spaces."""
    keys = []
    i, n = 0, len(spec)
    while i < n:
        if spec[i].isspace():
            i += 1
        elif spec[i] == "'":
            j = spec.find("'", i + 1)
            if j < 0:
                keys.append(spec[i + 1 :])
                break
            keys.append(spec[i + 1 : j])
            i = j + 1
        else:
            j = i
            while j < n and not spec[j].isspace():
                j += 1
            keys.append(spec[i:j])
            i = j
    return [k for k in keys if k]


def _sort_key(event: Event):
    ts = event.attributes.get("time:timestamp")
    # Events without (or with non-date) timestamps sort first, stably.
    if isinstance(ts, datetime):
        return (1, ts)
    return (0, datetime.min.replace(tzinfo=_UTC))


def _build_trace(elem, opts: XesImportOptions, event_tag: str, nslen: int) -> Trace:
    tattrs = {}
    events = []
    append_event = events.append
    for child in elem:
        if child.tag == event_tag:
            eattrs = {}
            for a in child:
                tag = a.tag[nslen:] if nslen else a.tag
                if tag == "string":
                    k = a.get("key")
                    if k is not None:
                        v = a.get("value")
                        eattrs[k] = v if v is not None else ""
                elif tag == "date":
                    k = a.get("key")
                    if k is not None:
                        raw = a.get("value")
                        try:
                            eattrs[k] = _parse_timestamp(raw)
                        except (ValueError, AttributeError, TypeError):
                            eattrs[k] = _scalar_fallback(opts, tag, k, raw)
                else:
                    k = a.get("key")
                    if k is not None:
                        eattrs[k] = _attr_value(a, opts, 1, nslen)
            append_event(Event(eattrs))
        else:
            key = child.get("key")
            if key is not None:
                tattrs[key] = _attr_value(child, opts, 1, nslen)
    if opts.sort_events_by_time:
        events.sort(key=_sort_key)
    return Trace(tattrs, events)


def _sniff_root(stream) -> tuple:
    """Read just enough bytes to learn the resolved root tag.

    Returns (consumed bytes, tag or None at EOF). The consumed bytes are
    replayed in front of the stream for the main parse, which only
    subscribes to element ends; knowing the namespace up front keeps the
    hot loop on precomputed tag names.
    """
    sniffer = ET.XMLPullParser(events=("start",))
    consumed = []
    while True:
        chunk = stream.read(1 << 14)
        if chunk:
            consumed.append(chunk)
        try:
            sniffer.feed(chunk)
        except ET.ParseError as exc:
            line, column = exc.position if exc.position else (None, None)
            raise MalformedXmlError(str(exc), line=line, column=column) from exc
        for _, elem in sniffer.read_events():
            return b"".join(consumed), elem.tag
        if not chunk:
            return b"".join(consumed), None


def _parse_stream(stream, opts: XesImportOptions) -> EventLog:
    head, root_tag = _sniff_root(stream)
    nslen = 0
    trace_tag = "trace"
    event_tag = "event"
    ext_tag = "extension"
    clf_tag = "classifier"
    glob_tag = "global"
    if root_tag is not None:
        rtag = root_tag
        if rtag.startswith("{"):  # namespaced document
            ns = rtag[: rtag.index("}") + 1]
            nslen = len(ns)
            trace_tag = ns + "trace"
            event_tag = ns + "event"
            ext_tag = ns + "extension"
            glob_tag = ns + "global"
            clf_tag = ns + "classifier"
            rtag = rtag[nslen:]
        if rtag != "log":
            raise MalformedXmlError(f"root element is <{rtag}>, expected <log>")

    log = EventLog()
    traces = log.traces
    iterator = ET.iterparse(_PrefixedStream(head, stream), events=("end",))
    try:
        for _, elem in iterator:
            tag = elem.tag
            if tag == trace_tag:
                traces.append(_build_trace(elem, opts, event_tag, nslen))
                # Drop the finished subtree so memory stays proportional
                # to the produced log, not the document. The emptied
                # element itself stays in the tree but holds nothing.
                elem.clear()
            elif tag == ext_tag:
                log.extensions.append(
                    (elem.get("name", ""), elem.get("prefix", ""), elem.get("uri", ""))
                )
            elif tag == clf_tag:
                keys = _split_classifier_keys(elem.get("keys", ""))
                if keys:
                    log.classifiers.append((elem.get("name", ""), keys))
            elif tag == glob_tag:
                scope = elem.get("scope", "event")
                target = log.global_trace_attrs if scope == "trace" else log.global_event_attrs
                target.update(_attrs_of(elem, opts, nslen))
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise MalformedXmlError(str(exc), line=line, column=column) from exc
    root = getattr(iterator, "root", None)
    if root is None:
        raise MalformedXmlError("document contains no root element")
    # Remaining direct children of <log> are log-level attributes. The
    # handled structural tags were either consumed above or carry no key.
    skip = (trace_tag, ext_tag, clf_tag, glob_tag, event_tag)
    for child in root:
        if child.tag in skip:
            continue
        key = child.get("key")
        if key is not None:
            log.attributes[key] = _attr_value(child, opts, 1, nslen)
    return log


def _as_stream(source):
    """Accept a path, bytes, or a binary file-like object."""
    if isinstance(source, (str, os.PathLike)):
        return open(source, "rb"), True
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source), True
    return source, False


def parse_xes(source, opts: XesImportOptions | None = None) -> EventLog:
    """Parse a plain XES document from a path, bytes or binary stream."""
    if opts is None:
        opts = XesImportOptions()
    stream, owned = _as_stream(source)
    try:
        return _parse_stream(stream, opts)
    finally:
        if owned:
            stream.close()


def parse_xes_gz(source, opts: XesImportOptions | None = None) -> EventLog:
    """Parse a gzip-compressed XES document.

    Raises NotGzipError when the magic bytes are missing and
    CorruptArchiveError when decompression fails mid-stream.
    """
    if opts is None:
        opts = XesImportOptions()
    stream, owned = _as_stream(source)
    try:
        head = stream.read(2)
        if head != _GZIP_MAGIC:
            raise NotGzipError("input does not start with gzip magic bytes 1f 8b")
        if stream.seekable():
            stream.seek(0)
            wrapped = stream
        else:
            wrapped = _PrefixedStream(head, stream)
        gz = gzip.GzipFile(fileobj=wrapped)
        try:
            return _parse_stream(gz, opts)
        except (EOFError, gzip.BadGzipFile, zlib.error) as exc:
            raise CorruptArchiveError(f"gzip stream failed: {exc}") from exc
        finally:
            gz.close()
    finally:
        if owned:
            stream.close()


class _PrefixedStream:
    """Replays already-consumed magic bytes in front of a non-seekable stream."""

    def __init__(self, prefix: bytes, stream):
        self._prefix = prefix
        self._stream = stream

    def read(self, n=-1):
        if self._prefix:
            if n is None or n < 0:
                out = self._prefix + self._stream.read(n)
                self._prefix = b""
                return out
            out = self._prefix[:n]
            self._prefix = self._prefix[n:]
            if len(out) < n:
                out += self._stream.read(n - len(out))
            return out
        return self._stream.read(n)

    def seekable(self):
        return False


def detect_and_parse(source, opts: XesImportOptions | None = None) -> EventLog:
    """Parse XES input, dispatching on gzip magic bytes rather than extension.

    Accepts the same sources as parse_xes: a path, raw bytes, or a
    binary file object.
    """
    if isinstance(source, bytes):
        magic = source[:2]
    elif hasattr(source, "read"):
        if not source.seekable():
            head = source.read(2)
            wrapped = _PrefixedStream(head, source)
            if head == _GZIP_MAGIC:
                return parse_xes_gz(wrapped, opts)
            return parse_xes(wrapped, opts)
        pos = source.tell()
        magic = source.read(2)
        source.seek(pos)
    else:
        with open(source, "rb") as fh:
            magic = fh.read(2)
    if magic == _GZIP_MAGIC:
        return parse_xes_gz(source, opts)
    return parse_xes(source, opts)


def xml_error_byte_offset(path, gz: bool | None = None) -> int | None:
    """Byte offset of the first XML error in a file, or None if well-formed.

    Used for import diagnostics only; re-scans the document with expat,
    which tracks exact byte positions.
    """
    import xml.parsers.expat as expat

    if gz is None:
        with open(path, "rb") as fh:
            gz = fh.read(2) == _GZIP_MAGIC
    opener = gzip.open if gz else open
    parser = expat.ParserCreate()
    try:
        with opener(path, "rb") as fh:
            while True:
                chunk = fh.read(1 << 16)
                if not chunk:
                    parser.Parse(b"", True)
                    break
                parser.Parse(chunk, False)
    except expat.ExpatError:
        return parser.ErrorByteIndex
    except OSError:
        return None
    return None
