"""Place-oriented process discovery over activity projections.

Pipeline: wrap every variant in artificial start/end activities, build a
directly-follows graph, drop infrequent relations, enumerate candidate
places, filter by count balance, filter by token replay, assemble an
accepting Petri net. Every stage is deterministic; replay may fan out
over worker threads without changing the result.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .errors import InvalidLabelError, VariantParseError
from .eventlog import ActivityProjection, add_artificial_acts
from .petri import AcceptingPetriNet, Marking, PetriNet

ARTIFICIAL_START = "▶"  # ▶
ARTIFICIAL_END = "■"  # ■


@dataclass(frozen=True)
class Dfg:
    """Directly-follows counts, weighted by variant multiplicity."""

    df_counts: dict = field(default_factory=dict)  # (a, b) -> count
    activity_counts: dict = field(default_factory=dict)
    start_counts: dict = field(default_factory=dict)
    end_counts: dict = field(default_factory=dict)
    total_traces: int = 0


@dataclass
class AlphaPPPConfig:
    """Thresholds parsed from a variant string plus execution knobs.

    df_significance scales the mean relation count into the DFG cutoff;
    balance_thresh caps the in/out count imbalance of a candidate;
    fitness_thresh selects which variants are replayed at all (relative
    to the most frequent one); replay_thresh is the minimum weighted
    fraction of replayed traces a place must fit.
    """

    df_significance: float
    balance_thresh: float
    fitness_thresh: float
    replay_thresh: float
    max_candidate_set_size: int = 3
    threads: object = 1  # int >= 1 or "all"

    def __post_init__(self):
        if self.df_significance < 0:
            raise ValueError(f"df_significance must be >= 0, got {self.df_significance}")
        for name in ("balance_thresh", "fitness_thresh", "replay_thresh"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if not isinstance(self.max_candidate_set_size, int) or self.max_candidate_set_size < 1:
            raise ValueError(
                f"max_candidate_set_size must be a positive integer, got {self.max_candidate_set_size}"
            )
        if self.threads != "all" and (
            not isinstance(self.threads, int) or self.threads < 1
        ):
            raise ValueError(f"threads must be a positive integer or 'all', got {self.threads}")

    def worker_count(self) -> int:
        if self.threads == "all":
            return os.cpu_count() or 1
        return self.threads


@dataclass(frozen=True)
class CandidatePlace:
    """A potential place: token in after any in_set fire, out before any out_set."""

    in_set: tuple
    out_set: tuple

    def __post_init__(self):
        object.__setattr__(self, "in_set", tuple(sorted(self.in_set)))
        object.__setattr__(self, "out_set", tuple(sorted(self.out_set)))
        if not self.in_set or not self.out_set:
            raise ValueError("candidate place needs non-empty in and out sets")


_VARIANT_PREFIXES = ("α+++", "alpha+++")


def parse_variant(text: str) -> AlphaPPPConfig:
    """Build a config from a variant string like "2.0|b0.5|t0.5|r0.5".

    A leading algorithm-name segment ("α+++|...") is tolerated and
    skipped. Raises ParseError naming the offending segment.
    """
    segments = text.split("|")
    if segments and segments[0].strip().lower() in _VARIANT_PREFIXES:
        segments = segments[1:]
    if len(segments) != 4:
        raise VariantParseError(
            f"expected <float>|b<float>|t<float>|r<float>, got {text!r}"
        )

    def number(segment: str, prefix: str) -> float:
        body = segment.strip()
        if prefix:
            if not body.startswith(prefix):
                raise VariantParseError(
                    f"segment {segment!r} must start with {prefix!r}"
                )
            body = body[len(prefix):]
        try:
            return float(body)
        except ValueError:
            raise VariantParseError(f"segment {segment!r} is not a number") from None

    values = [
        number(segments[0], ""),
        number(segments[1], "b"),
        number(segments[2], "t"),
        number(segments[3], "r"),
    ]
    try:
        return AlphaPPPConfig(*values)
    except ValueError as exc:
        raise VariantParseError(str(exc)) from None


def build_dfg(proj: ActivityProjection) -> Dfg:
    """Count adjacent activity pairs across variants, weighted by count."""
    df: dict = {}
    acts: dict = {}
    starts: dict = {}
    ends: dict = {}
    total = 0
    for seq, count in proj.variants:
        total += count
        if not seq:
            continue
        starts[seq[0]] = starts.get(seq[0], 0) + count
        ends[seq[-1]] = ends.get(seq[-1], 0) + count
        prev = seq[0]
        acts[prev] = acts.get(prev, 0) + count
        for act in seq[1:]:
            acts[act] = acts.get(act, 0) + count
            key = (prev, act)
            df[key] = df.get(key, 0) + count
            prev = act
    return Dfg(df, acts, starts, ends, total)


def filter_dfg(dfg: Dfg, df_significance: float) -> Dfg:
    """Keep relations whose count reaches df_significance times the mean count."""
    if not dfg.df_counts:
        return dfg
    cutoff = df_significance * (sum(dfg.df_counts.values()) / len(dfg.df_counts))
    kept = {pair: n for pair, n in dfg.df_counts.items() if n >= cutoff}
    return replace(dfg, df_counts=kept)


def generate_candidates(dfg: Dfg, max_size: int) -> list:
    """Enumerate candidate places (A, B) in lexicographic order.

    A pair qualifies when every cross pair A×B is a retained relation
    and neither side contains an internal relation (self-loops count).
    Both sides are capped at max_size elements.
    """
    if max_size < 1:
        raise ValueError(f"max_size must be >= 1, got {max_size}")
    relations = dfg.df_counts.keys()
    successors: dict = {}
    for a, b in relations:
        successors.setdefault(a, set()).add(b)
    sources = sorted(successors)
    targets = sorted({b for _, b in relations})
    out: list = []

    def emit_bs(in_acts: tuple, common: set):
        # DFS over B ⊆ common, ascending, internally relation-free.
        pool = [b for b in targets if b in common]

        def grow(b_acts: tuple, start: int):
            if b_acts:
                out.append(CandidatePlace(in_acts, b_acts))
            if len(b_acts) == max_size:
                return
            for i in range(start, len(pool)):
                b = pool[i]
                if (b, b) in relations:
                    continue
                if any((b, x) in relations or (x, b) in relations for x in b_acts):
                    continue
                grow(b_acts + (b,), i + 1)

        grow((), 0)

    def grow_a(a_acts: tuple, common: set, start: int):
        if a_acts:
            emit_bs(a_acts, common)
        if len(a_acts) == max_size:
            return
        for i in range(start, len(sources)):
            a = sources[i]
            if (a, a) in relations:
                continue
            if any((a, x) in relations or (x, a) in relations for x in a_acts):
                continue
            nxt = successors[a] if not a_acts else common & successors[a]
            if nxt:
                grow_a(a_acts + (a,), nxt, i + 1)

    grow_a((), set(), 0)
    return out


def balance_filter(cands, dfg: Dfg, balance_thresh: float) -> list:
    """Drop candidates whose in/out occurrence sums diverge beyond the threshold.

    Works on aggregate activity counts only, never touching traces.
    """
    counts = dfg.activity_counts
    kept = []
    for cand in cands:
        in_sum = sum(counts.get(a, 0) for a in cand.in_set)
        out_sum = sum(counts.get(b, 0) for b in cand.out_set)
        top = max(in_sum, out_sum)
        imbalance = abs(in_sum - out_sum) / top if top else 0.0
        if imbalance <= balance_thresh:
            kept.append(cand)
    return kept


def _fits(cand: CandidatePlace, variants) -> tuple:
    """(fitting weight, replayed weight) of cand over (seq, count) pairs."""
    in_set = frozenset(cand.in_set)
    out_set = frozenset(cand.out_set)
    fitting = 0
    total = 0
    for seq, count in variants:
        total += count
        tokens = 0
        for act in seq:
            if act in out_set:
                tokens -= 1
                if tokens < 0:
                    break
            if act in in_set:
                tokens += 1
        else:
            if tokens == 0:
                fitting += count
    return fitting, total


def replay_filter(
    cands,
    proj: ActivityProjection,
    fitness_thresh: float,
    replay_thresh: float,
    threads=1,
) -> list:
    """Keep candidates fitting enough of the frequent behavior.

    Variants rarer than fitness_thresh times the most frequent variant
    are not replayed at all. A variant fits a place when its running
    token count never dips below zero and ends at zero. Candidates are
    independent, so they may be scored in parallel; output preserves
    input order whatever the thread count.
    """
    cands = list(cands)
    if not cands:
        return []
    max_count = max((c for _, c in proj.variants), default=0)
    floor = fitness_thresh * max_count
    selected = [(seq, c) for seq, c in proj.variants if c >= floor]

    if threads == "all":
        workers = os.cpu_count() or 1
    else:
        workers = threads
    if workers > 1 and len(cands) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(lambda c: _fits(c, selected), cands))
    else:
        scores = [_fits(c, selected) for c in cands]

    kept = []
    for cand, (fitting, total) in zip(cands, scores):
        fraction = fitting / total if total else 1.0
        if fraction >= replay_thresh:
            kept.append(cand)
    return kept


def assemble_net(
    surviving,
    alphabet,
    start_label: str = ARTIFICIAL_START,
    end_label: str = ARTIFICIAL_END,
) -> AcceptingPetriNet:
    """Build the accepting net from surviving candidates.

    One labeled transition per non-artificial activity, one place per
    distinct candidate. Artificial endpoints never become transitions:
    a candidate consuming the start label turns into an initially marked
    source place, one producing the end label into a final-marking sink.
    """
    if start_label not in alphabet or end_label not in alphabet:
        raise InvalidLabelError(
            f"artificial labels {start_label!r}/{end_label!r} missing from alphabet"
        )
    start_idx = alphabet.index(start_label)
    end_idx = alphabet.index(end_label)
    artificial = {start_idx, end_idx}

    net = PetriNet()
    trans_of: dict = {}
    for idx, label in enumerate(alphabet):
        if idx in artificial:
            continue
        tid = f"t{len(trans_of)}"
        trans_of[idx] = tid
        net.add_transition(tid, label)

    initial: dict = {}
    final: dict = {}
    seen = set()
    for cand in surviving:
        if cand in seen:
            continue
        seen.add(cand)
        pid = f"p{len(seen) - 1}"
        net.add_place(pid)
        for a in cand.in_set:
            if a not in artificial:
                net.add_arc(trans_of[a], pid)
        for b in cand.out_set:
            if b not in artificial:
                net.add_arc(pid, trans_of[b])
        if start_idx in cand.in_set:
            initial[pid] = 1
        if end_idx in cand.out_set:
            final[pid] = 1
    return AcceptingPetriNet(net, Marking(initial), [Marking(final)])


def discover(proj: ActivityProjection, cfg: AlphaPPPConfig) -> AcceptingPetriNet:
    """Run the full pipeline on a projection."""
    net, _ = discover_with_timings(proj, cfg)
    return net


def discover_with_timings(proj: ActivityProjection, cfg: AlphaPPPConfig) -> tuple:
    """Like discover, also returning seconds spent per stage."""
    timings: dict = {}
    clock = time.perf_counter

    t0 = clock()
    wrapped = add_artificial_acts(proj, ARTIFICIAL_START, ARTIFICIAL_END)
    timings["add_artificial"] = clock() - t0

    t0 = clock()
    dfg = build_dfg(wrapped)
    timings["build_dfg"] = clock() - t0

    t0 = clock()
    dfg = filter_dfg(dfg, cfg.df_significance)
    timings["filter_dfg"] = clock() - t0

    t0 = clock()
    cands = generate_candidates(dfg, cfg.max_candidate_set_size)
    timings["generate_candidates"] = clock() - t0

    t0 = clock()
    cands = balance_filter(cands, dfg, cfg.balance_thresh)
    timings["balance_filter"] = clock() - t0

    t0 = clock()
    cands = replay_filter(
        cands, wrapped, cfg.fitness_thresh, cfg.replay_thresh, cfg.threads
    )
    timings["replay_filter"] = clock() - t0

    t0 = clock()
    net = assemble_net(cands, wrapped.alphabet, ARTIFICIAL_START, ARTIFICIAL_END)
    timings["assemble"] = clock() - t0
    return net, timings
