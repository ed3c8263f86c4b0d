"""In-memory event log data model, activity projection and log transforms.

Attribute values use native Python types on the hot path (str, int, float,
bool, tz-aware datetime) plus two thin containers for the XES compound
kinds and a str subclass for XES id attributes:

    text        -> str
    integer     -> int
    float       -> float
    boolean     -> bool
    timestamp   -> datetime (UTC, millisecond precision)
    identifier  -> XesId (str subclass)
    list        -> AttrList of (key, value) pairs, order preserved
    map         -> dict (keyed child attributes, unique keys)

All types are treated as immutable after construction; transforms return
new values and never mutate their inputs, so instances are safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Sequence, Union

from .errors import LabelCollisionError

ACTIVITY_KEY = "concept:name"
TIMESTAMP_KEY = "time:timestamp"

#: Label used when an event carries none of the classifier keys.
INVALID_LABEL = "__INVALID__"

#: Maximum attribute nesting depth accepted anywhere in the model.
MAX_ATTR_DEPTH = 64


class XesId(str):
    """Identifier attribute value (UUID text). Distinct from plain text."""

    __slots__ = ()

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"XesId({str.__repr__(self)})"


class AttrList(list):
    """Ordered list of (key, value) child attributes. Keys may repeat."""

    __slots__ = ()


AttributeValue = Union[str, int, float, bool, datetime, XesId, AttrList, dict]


def attribute_depth(value: AttributeValue) -> int:
    """Nesting depth of an attribute value; scalars have depth 1."""
    if isinstance(value, AttrList):
        return 1 + max((attribute_depth(v) for _, v in value), default=0)
    if isinstance(value, dict):
        return 1 + max((attribute_depth(v) for v in value.values()), default=0)
    return 1


@dataclass(slots=True)
class Event:
    """One event: a keyed map of attributes.

    ``activity`` and ``timestamp`` read the conventional XES keys and
    return None when the key is absent.
    """

    attributes: dict

    @property
    def activity(self):
        return self.attributes.get(ACTIVITY_KEY)

    @property
    def timestamp(self):
        return self.attributes.get(TIMESTAMP_KEY)


@dataclass(slots=True)
class Trace:
    """One case: trace attributes plus its events in document order.

    Event order is preserved exactly as parsed; nothing re-sorts by
    timestamp unless the caller asked the importer to.
    """

    attributes: dict
    events: list


@dataclass
class EventLog:
    """Full event log with XES metadata.

    extensions are (name, prefix, uri) triples; classifiers are
    (name, attribute-keys) pairs with non-empty key lists.
    """

    traces: list = field(default_factory=list)
    attributes: dict = field(default_factory=dict)
    global_trace_attrs: dict = field(default_factory=dict)
    global_event_attrs: dict = field(default_factory=dict)
    extensions: list = field(default_factory=list)
    classifiers: list = field(default_factory=list)

    def __post_init__(self):
        for name, keys in self.classifiers:
            if not keys:
                raise ValueError(f"classifier {name!r} has no attribute keys")


@dataclass
class ActivityProjection:
    """Compressed log view: activity alphabet plus (variant, count) pairs.

    Variants are tuples of alphabet indices; counts are >= 1; variant
    sequences are pairwise distinct and the counts sum to the number of
    traces of the source log.
    """

    alphabet: list
    variants: list  # list of (tuple[int, ...], int)

    def case_count(self) -> int:
        return sum(c for _, c in self.variants)


@dataclass(frozen=True)
class LogStats:
    events: int
    activities: int
    cases: int
    variants: int


def _classifier_label(event: Event, keys: Sequence[str]) -> str:
    attrs = event.attributes
    if len(keys) == 1:
        v = attrs.get(keys[0])
        return INVALID_LABEL if v is None else v if type(v) is str else str(v)
    parts = []
    missing = 0
    for k in keys:
        v = attrs.get(k)
        if v is None:
            missing += 1
            parts.append("")
        else:
            parts.append(v if type(v) is str else str(v))
    if missing == len(keys):
        return INVALID_LABEL
    return "+".join(parts)


def project(log: EventLog, classifier_keys: Sequence[str] = (ACTIVITY_KEY,)) -> ActivityProjection:
    """Project a log onto activity sequences, merging duplicate variants.

    Multiple classifier keys are joined with "+"; an event carrying none
    of the keys maps to the INVALID_LABEL sentinel. The alphabet is
    ordered by first appearance, so output is deterministic.
    """
    alphabet: list = []
    index: dict = {}
    counts: dict = {}
    keys = tuple(classifier_keys)
    single = keys[0] if len(keys) == 1 else None
    for trace in log.traces:
        seq = []
        for event in trace.events:
            if single is not None:
                v = event.attributes.get(single)
                label = INVALID_LABEL if v is None else v if type(v) is str else str(v)
            else:
                label = _classifier_label(event, keys)
            i = index.get(label)
            if i is None:
                i = index[label] = len(alphabet)
                alphabet.append(label)
            seq.append(i)
        tseq = tuple(seq)
        counts[tseq] = counts.get(tseq, 0) + 1
    return ActivityProjection(alphabet, list(counts.items()))


def add_artificial_acts(proj: ActivityProjection, start_label: str, end_label: str) -> ActivityProjection:
    """Wrap every variant as <start> . variant . <end>.

    The two labels are appended to the alphabet; counts are unchanged.
    Raises LabelCollisionError when either label already exists.
    """
    for label in (start_label, end_label):
        if label in proj.alphabet:
            raise LabelCollisionError(f"label {label!r} already in alphabet")
    if start_label == end_label:
        raise LabelCollisionError(f"start and end labels are both {start_label!r}")
    n = len(proj.alphabet)
    start, end = n, n + 1
    variants = [((start,) + seq + (end,), c) for seq, c in proj.variants]
    return ActivityProjection(list(proj.alphabet) + [start_label, end_label], variants)


def add_artificial_acts_log(log: EventLog, start_label: str, end_label: str) -> EventLog:
    """Return a copy of the log with a start/end event added to each trace.

    The inserted events carry only a "concept:name" attribute. Existing
    events are shared, not copied; the input log is left untouched.
    """
    traces = []
    for trace in log.traces:
        events = [Event({ACTIVITY_KEY: start_label})]
        events.extend(trace.events)
        events.append(Event({ACTIVITY_KEY: end_label}))
        traces.append(Trace(dict(trace.attributes), events))
    return EventLog(
        traces=traces,
        attributes=dict(log.attributes),
        global_trace_attrs=dict(log.global_trace_attrs),
        global_event_attrs=dict(log.global_event_attrs),
        extensions=list(log.extensions),
        classifiers=list(log.classifiers),
    )


def log_stats(log: EventLog) -> LogStats:
    """Count events, distinct activities, cases and distinct variants.

    Activities are distinct "concept:name" values actually present;
    variants use the default classifier with the INVALID_LABEL sentinel
    for events missing it, matching project().
    """
    events = 0
    activities = set()
    variant_seqs = set()
    for trace in log.traces:
        seq = []
        for event in trace.events:
            v = event.attributes.get(ACTIVITY_KEY)
            if v is None:
                seq.append(INVALID_LABEL)
            else:
                label = v if type(v) is str else str(v)
                activities.add(label)
                seq.append(label)
            events += 1
        variant_seqs.add(tuple(seq))
    return LogStats(events, len(activities), len(log.traces), len(variant_seqs))
