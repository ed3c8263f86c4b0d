"""Command-line front end: import statistics, discovery, benchmarking.

Measurement style follows the repository's benchmarking conventions:
N repetitions (default 10) on a monotonic clock, reported as median,
mean, and sample standard deviation with 4-decimal seconds.
"""

from __future__ import annotations

import argparse
import csv
import io
import statistics
import sys
import time
from dataclasses import dataclass

from . import alphappp, petri, xes
from .errors import MalformedXmlError, PmCoreError
from .eventlog import log_stats, project
from .table import to_event_table


@dataclass
class BenchResult:
    label: str
    samples: list
    median: float
    mean: float
    sd: float

    @classmethod
    def from_samples(cls, label: str, samples) -> "BenchResult":
        samples = list(samples)
        if not samples:
            raise ValueError("at least one sample required")
        sd = statistics.stdev(samples) if len(samples) > 1 else 0.0
        return cls(
            label=label,
            samples=samples,
            median=statistics.median(samples),
            mean=statistics.fmean(samples),
            sd=sd,
        )


def format_bench_table(results, fmt: str = "md") -> str:
    """Render results as a Markdown or CSV table (seconds, 4 decimals)."""
    rows = [
        (r.label, f"{r.median:.4f}", f"{r.mean:.4f}", f"{r.sd:.4f}") for r in results
    ]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "median_s", "mean_s", "sd_s"])
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        lines = [
            "| Label | Median [s] | Mean [s] | SD [s] |",
            "| --- | --- | --- | --- |",
        ]
        lines.extend(f"| {label} | {med} | {mean} | {sd} |" for label, med, mean, sd in rows)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def _parse_threads(text: str):
    if text == "all":
        return "all"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"threads must be a positive integer or 'all', got {text!r}"
        ) from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"threads must be >= 1, got {value}")
    return value


def _stats_line(stats) -> str:
    return (
        f"events={stats.events} activities={stats.activities} "
        f"cases={stats.cases} variants={stats.variants}"
    )


def _fail_parse(path: str, exc: Exception) -> int:
    if isinstance(exc, MalformedXmlError):
        offset = xes.xml_error_byte_offset(path)
        if offset is not None:
            print(
                f"error: {path}: malformed XML at byte offset {offset}: {exc}",
                file=sys.stderr,
            )
            return 1
    print(f"error: {path}: {exc}", file=sys.stderr)
    return 1


def cmd_import(args) -> int:
    try:
        log = xes.detect_and_parse(args.path)
    except (PmCoreError, OSError) as exc:
        return _fail_parse(args.path, exc)
    print(_stats_line(log_stats(log)))
    if args.table:
        to_event_table(log).write_csv(args.table)
        print(f"wrote {args.table}", file=sys.stderr)
    return 0


def _write_net(net, out: str | None) -> None:
    if out is None:
        print(petri.to_json(net))
    elif out.endswith(".pnml"):
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(petri.to_pnml(net))
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(petri.to_json(net))
            fh.write("\n")


def cmd_discover(args) -> int:
    try:
        cfg = alphappp.parse_variant(args.variant)
    except PmCoreError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    cfg.threads = args.threads
    try:
        log = xes.detect_and_parse(args.path)
        net, timings = alphappp.discover_with_timings(project(log), cfg)
    except (PmCoreError, OSError) as exc:
        return _fail_parse(args.path, exc)
    for stage, seconds in timings.items():
        print(f"{stage:>20}  {seconds:.4f}s", file=sys.stderr)
    _write_net(net, args.out)
    if args.out:
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    if args.what == "discover" and not args.variant:
        print("error: bench --what discover requires --variant", file=sys.stderr)
        return 1
    try:
        if args.what == "import":
            # Timed region covers read + parse + table build.
            def target():
                to_event_table(xes.detect_and_parse(args.path))
        else:
            cfg = alphappp.parse_variant(args.variant)
            cfg.threads = args.threads
            log = xes.detect_and_parse(args.path)

            def target():
                alphappp.discover(project(log), cfg)

        for _ in range(args.warmup):
            target()
        samples = []
        for _ in range(args.n):
            t0 = time.perf_counter()
            target()
            samples.append(time.perf_counter() - t0)
    except (PmCoreError, OSError) as exc:
        return _fail_parse(args.path, exc)
    result = BenchResult.from_samples(args.what, samples)
    sys.stdout.write(format_bench_table([result], args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmcore",
        description="Event log import, process discovery, and benchmarking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_import = sub.add_parser("import", help="parse an XES file and print statistics")
    p_import.add_argument("path")
    p_import.add_argument(
        "--stats",
        action="store_true",
        help="print the statistics line (on by default)",
    )
    p_import.add_argument("--table", metavar="FILE", help="write the event table as CSV")
    p_import.set_defaults(func=cmd_import)

    p_disc = sub.add_parser("discover", help="discover an accepting Petri net")
    p_disc.add_argument("path")
    p_disc.add_argument("--variant", required=True, help='e.g. "2.0|b0.5|t0.5|r0.5"')
    p_disc.add_argument(
        "--out", metavar="FILE", help="output file (.pnml for PNML, JSON otherwise)"
    )
    p_disc.add_argument("--threads", type=_parse_threads, default=1, metavar="N|all")
    p_disc.set_defaults(func=cmd_discover)

    p_bench = sub.add_parser("bench", help="time import or discovery N times")
    p_bench.add_argument("path")
    p_bench.add_argument("--what", choices=("import", "discover"), required=True)
    p_bench.add_argument("--variant", help="required when --what discover")
    p_bench.add_argument("--n", type=int, default=10, help="repetitions (default 10)")
    p_bench.add_argument("--format", choices=("md", "csv"), default="md")
    p_bench.add_argument(
        "--warmup", type=int, default=0, metavar="K", help="untimed runs, excluded from stats"
    )
    p_bench.add_argument("--threads", type=_parse_threads, default=1, metavar="N|all")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 1) < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return 1
    if getattr(args, "warmup", 0) < 0:
        print("error: --warmup must be >= 0", file=sys.stderr)
        return 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
