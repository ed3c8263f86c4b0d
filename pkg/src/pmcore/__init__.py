"""Process mining core: XES import, Alpha+++ discovery, Petri nets.

The package splits into focused modules; this namespace re-exports the
everyday entry points so `import pmcore` is enough for scripting.
"""

from . import boundary
from .alphappp import (
    ARTIFICIAL_END,
    ARTIFICIAL_START,
    AlphaPPPConfig,
    CandidatePlace,
    Dfg,
    balance_filter,
    build_dfg,
    discover,
    discover_with_timings,
    filter_dfg,
    generate_candidates,
    parse_variant,
    replay_filter,
)
from .errors import (
    CorruptArchiveError,
    DepthExceededError,
    DoubleDestroyError,
    InvalidAttributeError,
    InvalidLabelError,
    InvariantViolationError,
    LabelCollisionError,
    MalformedXmlError,
    NotEnabledError,
    NotGzipError,
    PmCoreError,
    SchemaViolationError,
    UnknownHandleError,
    UnknownPlaceError,
    VariantParseError,
)
from .eventlog import (
    ActivityProjection,
    Event,
    EventLog,
    LogStats,
    Trace,
    add_artificial_acts,
    add_artificial_acts_log,
    log_stats,
    project,
)
from .petri import (
    AcceptingPetriNet,
    Marking,
    PetriNet,
    Place,
    Transition,
    enabled_transitions,
    fire,
    from_json,
    to_json,
    to_pnml,
)
from .table import EventTable, to_event_table
from .xes import XesImportOptions, detect_and_parse, parse_xes, parse_xes_gz

__version__ = "0.1.0"

__all__ = [
    "ARTIFICIAL_END",
    "ARTIFICIAL_START",
    "AcceptingPetriNet",
    "ActivityProjection",
    "AlphaPPPConfig",
    "CandidatePlace",
    "CorruptArchiveError",
    "DepthExceededError",
    "Dfg",
    "DoubleDestroyError",
    "Event",
    "EventLog",
    "EventTable",
    "InvalidAttributeError",
    "InvalidLabelError",
    "InvariantViolationError",
    "LabelCollisionError",
    "LogStats",
    "MalformedXmlError",
    "Marking",
    "NotEnabledError",
    "NotGzipError",
    "PetriNet",
    "Place",
    "PmCoreError",
    "SchemaViolationError",
    "Trace",
    "Transition",
    "UnknownHandleError",
    "UnknownPlaceError",
    "VariantParseError",
    "XesImportOptions",
    "add_artificial_acts",
    "add_artificial_acts_log",
    "balance_filter",
    "boundary",
    "build_dfg",
    "detect_and_parse",
    "discover",
    "discover_with_timings",
    "enabled_transitions",
    "filter_dfg",
    "fire",
    "from_json",
    "generate_candidates",
    "log_stats",
    "parse_variant",
    "parse_xes",
    "parse_xes_gz",
    "project",
    "replay_filter",
    "to_event_table",
    "to_json",
    "to_pnml",
]
