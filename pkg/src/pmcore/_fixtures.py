"""Test fixtures: XES writing and synthetic benchmark corpora.

Not part of the public API. The writer exists so round-trip tests can
produce arbitrary documents; the corpus builder fabricates logs whose
headline statistics (events, activities, cases, variants) exactly match
well-known public benchmark logs, so statistics and throughput tests
run offline and deterministically.

    python -m pmcore._fixtures sepsis /tmp/sepsis.xes
    python -m pmcore._fixtures rtfm /tmp/rtfm.xes.gz
"""

from __future__ import annotations

import gzip
import io
import sys
from datetime import datetime, timedelta, timezone
from xml.sax.saxutils import escape, quoteattr

from .eventlog import AttrList, EventLog, LogStats, XesId


def _classifier_keys_attr(keys) -> str:
    parts = []
    for key in keys:
        parts.append(f"'{key}'" if " " in key else key)
    return " ".join(parts)


def _write_attr(out, key: str, value, indent: str) -> None:
    k = quoteattr(key)
    if isinstance(value, AttrList):
        out.write(f"{indent}<list key={k}>\n")
        for child_key, child_value in value:
            _write_attr(out, child_key, child_value, indent + "  ")
        out.write(f"{indent}</list>\n")
    elif isinstance(value, dict):
        out.write(f"{indent}<container key={k}>\n")
        for child_key, child_value in value.items():
            _write_attr(out, child_key, child_value, indent + "  ")
        out.write(f"{indent}</container>\n")
    elif isinstance(value, XesId):
        out.write(f"{indent}<id key={k} value={quoteattr(str(value))}/>\n")
    elif isinstance(value, bool):
        text = "true" if value else "false"
        out.write(f"{indent}<boolean key={k} value=\"{text}\"/>\n")
    elif isinstance(value, int):
        out.write(f"{indent}<int key={k} value=\"{value}\"/>\n")
    elif isinstance(value, float):
        out.write(f"{indent}<float key={k} value=\"{value!r}\"/>\n")
    elif isinstance(value, datetime):
        out.write(
            f"{indent}<date key={k} value=\"{value.isoformat(timespec='milliseconds')}\"/>\n"
        )
    else:
        out.write(f"{indent}<string key={k} value={quoteattr(str(value))}/>\n")


def write_xes(log: EventLog, target) -> None:
    """Write a log as XES XML to a path or text file object."""
    if hasattr(target, "write"):
        _write_xes_stream(log, target)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            _write_xes_stream(log, fh)


def _write_xes_stream(log: EventLog, out) -> None:
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<log xes.version="1849-2016" xes.features="nested-attributes">\n')
    for name, prefix, uri in log.extensions:
        out.write(
            f"  <extension name={quoteattr(name)} prefix={quoteattr(prefix)} "
            f"uri={quoteattr(uri)}/>\n"
        )
    for scope, attrs in (("trace", log.global_trace_attrs), ("event", log.global_event_attrs)):
        if attrs:
            out.write(f'  <global scope="{scope}">\n')
            for key, value in attrs.items():
                _write_attr(out, key, value, "    ")
            out.write("  </global>\n")
    for name, keys in log.classifiers:
        out.write(
            f"  <classifier name={quoteattr(name)} "
            f"keys={quoteattr(_classifier_keys_attr(keys))}/>\n"
        )
    for key, value in log.attributes.items():
        _write_attr(out, key, value, "  ")
    for trace in log.traces:
        out.write("  <trace>\n")
        for key, value in trace.attributes.items():
            _write_attr(out, key, value, "    ")
        for event in trace.events:
            out.write("    <event>\n")
            for key, value in event.attributes.items():
                _write_attr(out, key, value, "      ")
            out.write("    </event>\n")
        out.write("  </trace>\n")
    out.write("</log>\n")


# --- synthetic corpus twins ------------------------------------------------

# name -> (events, activities, cases, variants)
TWINS = {
    "sepsis": (15214, 16, 1050, 846),
    "rtfm": (561470, 11, 150370, 231),
    "bpi2019_3000": (18972, 34, 3000, 470),
    "bpi2020_rfp": (36796, 19, 6886, 89),
    "bpi2020_dd": (56437, 17, 10500, 99),
}


def expected_stats(name: str) -> LogStats:
    events, activities, cases, variants = TWINS[name]
    return LogStats(events=events, activities=activities, cases=cases, variants=variants)


def _digits_needed(count: int, base: int) -> int:
    d, reach = 1, base
    while reach < count:
        d += 1
        reach *= base
    return d


def two_length_plan(events: int, activities: int, cases: int, variants: int) -> dict:
    """Split the targets over two trace lengths L and L+1.

    Returns per-group (length, case count, variant count) so that the
    grand totals land exactly on the requested numbers. Within a group,
    all variants get one case except the last, which absorbs the rest.
    """
    length = events // cases
    extra = events - length * cases
    n_a, n_b = cases - extra, extra
    if n_b == 0:
        v_a, v_b = variants, 0
    else:
        v_b = max(1, round(variants * extra / cases))
        v_b = min(v_b, n_b, variants - (1 if n_a else 0))
        v_a = variants - v_b
    if n_a and not v_a:
        raise ValueError("group with cases but no variants")
    if v_a > n_a or v_b > n_b:
        raise ValueError("more variants than cases in a group")
    if length < 1 or (v_a and _digits_needed(v_a, activities) > length):
        raise ValueError("traces too short to distinguish variants")
    if v_b and _digits_needed(v_b, activities) > length + 1:
        raise ValueError("traces too short to distinguish variants")
    check = n_a * length + n_b * (length + 1)
    if check != events:
        raise ValueError(f"length split off by {events - check}")
    return {
        "activities": activities,
        "groups": [
            {"length": length, "cases": n_a, "variants": v_a},
            {"length": length + 1, "cases": n_b, "variants": v_b},
        ],
    }


def _variant_seq(i: int, length: int, digits: int, activities: int) -> list:
    seq = [(i + j) % activities for j in range(length - digits)]
    tail = []
    x = i
    for _ in range(digits):
        tail.append(x % activities)
        x //= activities
    seq.extend(reversed(tail))
    return seq


def iter_twin_cases(name: str):
    """Yield (case id, activity index sequence) for every case of a twin."""
    events, activities, cases, variants = TWINS[name]
    plan = two_length_plan(events, activities, cases, variants)
    case_no = 0
    for group in plan["groups"]:
        v_g, n_g, length = group["variants"], group["cases"], group["length"]
        if not v_g:
            continue
        digits = _digits_needed(v_g, activities)
        for i in range(v_g):
            seq = _variant_seq(i, length, digits, activities)
            copies = 1 if i < v_g - 1 else n_g - (v_g - 1)
            for _ in range(copies):
                yield f"case_{case_no:06d}", seq
                case_no += 1


_BASE_TS = datetime(2024, 1, 1, tzinfo=timezone.utc)


def write_twin(name: str, path) -> None:
    """Stream a twin log to disk as plain XES, or gzip when path ends .gz."""
    _, activities, _, _ = TWINS[name]
    labels = [f"act{i:02d}" for i in range(activities)]
    seen = set()
    raw = open(path, "wb")
    try:
        if str(path).endswith(".gz"):
            binary = gzip.GzipFile(fileobj=raw, mode="wb", compresslevel=1)
        else:
            binary = raw
        out = io.TextIOWrapper(binary, encoding="utf-8", newline="")
        out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        out.write('<log xes.version="1849-2016">\n')
        out.write(
            '  <extension name="Concept" prefix="concept" '
            'uri="http://www.xes-standard.org/concept.xesext"/>\n'
        )
        out.write(
            '  <extension name="Time" prefix="time" '
            'uri="http://www.xes-standard.org/time.xesext"/>\n'
        )
        out.write('  <classifier name="Activity" keys="concept:name"/>\n')
        out.write(f"  <string key=\"concept:name\" value=\"{name}\"/>\n")
        case_index = 0
        for case_id, seq in iter_twin_cases(name):
            seen.update(seq)
            start = _BASE_TS + timedelta(seconds=case_index)
            out.write("  <trace>\n")
            out.write(f'    <string key="concept:name" value="{case_id}"/>\n')
            for k, act in enumerate(seq):
                ts = (start + timedelta(minutes=k)).isoformat(timespec="milliseconds")
                out.write("    <event>\n")
                out.write(f'      <string key="concept:name" value="{labels[act]}"/>\n')
                out.write(f'      <date key="time:timestamp" value="{ts}"/>\n')
                out.write(
                    '      <string key="lifecycle:transition" value="complete"/>\n'
                )
                out.write("    </event>\n")
            out.write("  </trace>\n")
            case_index += 1
        out.write("</log>\n")
        out.flush()
        out.detach()
        if binary is not raw:
            binary.close()
    finally:
        raw.close()
    if len(seen) != activities:
        raise AssertionError(f"twin {name} used {len(seen)} of {activities} activities")


def write_minimal(path) -> None:
    """One trace with a single event, activity "a"."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        fh.write('<log xes.version="1849-2016">\n  <trace>\n')
        fh.write('    <string key="concept:name" value="case_0"/>\n')
        fh.write("    <event>\n")
        fh.write('      <string key="concept:name" value="a"/>\n')
        fh.write('      <date key="time:timestamp" value="2024-01-01T00:00:00.000+00:00"/>\n')
        fh.write("    </event>\n  </trace>\n</log>\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2 or (argv[0] not in TWINS and argv[0] != "minimal"):
        names = ", ".join(sorted(TWINS) + ["minimal"])
        print(f"usage: python -m pmcore._fixtures <{names}> <path>", file=sys.stderr)
        return 2
    name, path = argv
    if name == "minimal":
        write_minimal(path)
    else:
        write_twin(name, path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
