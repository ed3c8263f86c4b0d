"""Exception hierarchy shared by all pmcore modules.

Every error that may cross the serialized boundary carries a stable
``code`` string; the boundary encodes failures as
``{"error": <code>, "detail": <message>}`` (schema pmcore-err/1).
"""

from __future__ import annotations


class PmCoreError(Exception):
    """Base class for all pmcore domain errors."""

    code = "Error"


class MalformedXmlError(PmCoreError):
    """XML document is not well-formed (unbalanced tags, bad entities)."""

    code = "MalformedXml"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class InvalidAttributeError(PmCoreError):
    """Attribute value could not be coerced to its declared XES type."""

    code = "InvalidAttribute"


class DepthExceededError(PmCoreError):
    """Attribute nesting exceeds the configured maximum depth."""

    code = "DepthExceeded"


class NotGzipError(PmCoreError):
    """Input does not start with the gzip magic bytes."""

    code = "NotGzip"


class CorruptArchiveError(PmCoreError):
    """Gzip stream is truncated or fails CRC/decompression."""

    code = "CorruptArchive"


class LabelCollisionError(PmCoreError):
    """Artificial start/end label already present in the alphabet."""

    code = "LabelCollision"


class UnknownPlaceError(PmCoreError):
    """Marking references a place that is not part of the net."""

    code = "UnknownPlace"


class NotEnabledError(PmCoreError):
    """Attempt to fire a transition whose preconditions are not met."""

    code = "NotEnabled"


class InvalidLabelError(PmCoreError):
    """Net assembly endpoints missing from the alphabet."""

    code = "InvalidLabel"


class SchemaViolationError(PmCoreError):
    """Serialized payload does not match its published schema."""

    code = "SchemaViolation"


class InvariantViolationError(PmCoreError):
    """Decoded value violates a structural invariant of its type."""

    code = "InvariantViolation"


class UnknownHandleError(PmCoreError):
    """Handle was never issued, or the log behind it is gone."""

    code = "UnknownHandle"


class DoubleDestroyError(PmCoreError):
    """Handle destroyed a second time."""

    code = "DoubleDestroy"


class VariantParseError(PmCoreError):
    """Discovery variant string does not match <float>|b<float>|t<float>|r<float>."""

    code = "ParseError"
