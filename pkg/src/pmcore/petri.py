"""Accepting Petri nets: construction, marking semantics, JSON and PNML.

Construction is permissive; validate() reports structural problems as
data instead of raising, so partially built nets can be inspected. Nets
are treated as immutable once built and may be shared across threads.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import (
    InvariantViolationError,
    NotEnabledError,
    SchemaViolationError,
    UnknownPlaceError,
)


@dataclass(frozen=True)
class Place:
    id: str


@dataclass(frozen=True)
class Transition:
    id: str
    label: str | None = None  # None = silent


class Marking(dict):
    """Multiset of tokens keyed by place id; absent means zero.

    Canonical form never stores zero counts, so equal markings compare
    equal as dicts.
    """

    def __init__(self, counts=()):
        super().__init__()
        items = counts.items() if isinstance(counts, dict) else counts
        for pid, n in items:
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise InvariantViolationError(
                    f"token count for {pid!r} must be a non-negative integer, got {n!r}"
                )
            if n > 0:
                self[pid] = n


@dataclass
class PetriNet:
    places: dict = field(default_factory=dict)
    transitions: dict = field(default_factory=dict)
    arcs: dict = field(default_factory=dict)  # (source id, target id) -> weight

    def add_place(self, pid: str) -> Place:
        place = self.places.get(pid)
        if place is None:
            place = self.places[pid] = Place(pid)
        return place

    def add_transition(self, tid: str, label: str | None = None) -> Transition:
        trans = self.transitions.get(tid)
        if trans is None or trans.label != label:
            trans = self.transitions[tid] = Transition(tid, label)
        return trans

    def add_arc(self, source: str, target: str, weight: int = 1) -> None:
        # Duplicate (source, target) pairs merge by weight.
        key = (source, target)
        self.arcs[key] = self.arcs.get(key, 0) + weight

    def validate(self) -> list:
        """List of violation messages; empty means structurally sound."""
        violations = []
        shared = self.places.keys() & self.transitions.keys()
        for nid in sorted(shared):
            violations.append(f"id {nid!r} is both a place and a transition")
        for (src, tgt), weight in self.arcs.items():
            src_p, src_t = src in self.places, src in self.transitions
            tgt_p, tgt_t = tgt in self.places, tgt in self.transitions
            if not (src_p or src_t):
                violations.append(f"dangling endpoint: arc source {src!r} unknown")
            if not (tgt_p or tgt_t):
                violations.append(f"dangling endpoint: arc target {tgt!r} unknown")
            elif (src_p and tgt_p) or (src_t and tgt_t):
                violations.append(f"non-bipartite arc {src!r} -> {tgt!r}")
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                violations.append(
                    f"arc {src!r} -> {tgt!r} has non-positive weight {weight!r}"
                )
        return violations

    def preset(self, node_id: str) -> dict:
        """Map source id -> weight over arcs into node_id."""
        return {s: w for (s, t), w in self.arcs.items() if t == node_id}

    def postset(self, node_id: str) -> dict:
        """Map target id -> weight over arcs out of node_id."""
        return {t: w for (s, t), w in self.arcs.items() if s == node_id}


def _check_marking(net: PetriNet, marking) -> None:
    for pid in marking:
        if pid not in net.places:
            raise UnknownPlaceError(f"marking references unknown place {pid!r}")


def enabled_transitions(net: PetriNet, marking) -> set:
    """Ids of transitions whose every input place holds enough tokens."""
    _check_marking(net, marking)
    demand: dict = {tid: {} for tid in net.transitions}
    for (src, tgt), weight in net.arcs.items():
        if src in net.places and tgt in net.transitions:
            demand[tgt][src] = weight
    return {
        tid
        for tid, need in demand.items()
        if all(marking.get(pid, 0) >= w for pid, w in need.items())
    }


def fire(net: PetriNet, marking, tid: str) -> Marking:
    """New marking after firing tid; the input marking is unmodified."""
    if tid not in net.transitions:
        raise NotEnabledError(f"unknown transition {tid!r}")
    _check_marking(net, marking)
    counts = dict(marking)
    for (src, tgt), weight in net.arcs.items():
        if tgt == tid and src in net.places:
            left = counts.get(src, 0) - weight
            if left < 0:
                raise NotEnabledError(
                    f"transition {tid!r} needs {weight} tokens in {src!r}"
                )
            counts[src] = left
    for (src, tgt), weight in net.arcs.items():
        if src == tid and tgt in net.places:
            counts[tgt] = counts.get(tgt, 0) + weight
    return Marking(counts)


@dataclass
class AcceptingPetriNet:
    net: PetriNet
    initial_marking: Marking = field(default_factory=Marking)
    final_markings: list = field(default_factory=lambda: [Marking()])

    def __post_init__(self):
        if not self.final_markings:
            raise InvariantViolationError("final_markings must be non-empty")

    def validate(self) -> list:
        violations = self.net.validate()
        for label, marking in [("initial", self.initial_marking)] + [
            (f"final[{i}]", m) for i, m in enumerate(self.final_markings)
        ]:
            for pid in marking:
                if pid not in self.net.places:
                    violations.append(
                        f"{label} marking references unknown place {pid!r}"
                    )
        return violations


def _marking_obj(marking, place_order: dict) -> dict:
    # Keys emitted in place creation order for byte-stable output.
    return {pid: marking[pid] for pid in place_order if pid in marking}


def to_json(apn: AcceptingPetriNet) -> str:
    """Serialize an accepting net to deterministic compact JSON."""
    net = apn.net
    doc = {
        "places": list(net.places),
        "transitions": [
            {"id": t.id, "label": t.label} for t in net.transitions.values()
        ],
        "arcs": [[src, tgt, w] for (src, tgt), w in net.arcs.items()],
        "initial_marking": _marking_obj(apn.initial_marking, net.places),
        "final_markings": [
            _marking_obj(m, net.places) for m in apn.final_markings
        ],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def _expect(cond: bool, detail: str) -> None:
    if not cond:
        raise SchemaViolationError(detail)


def _decode_marking(obj, what: str) -> Marking:
    _expect(isinstance(obj, dict), f"{what} must be an object")
    for pid, n in obj.items():
        _expect(isinstance(pid, str), f"{what} keys must be text")
        _expect(
            isinstance(n, int) and not isinstance(n, bool) and n >= 0,
            f"{what}[{pid!r}] must be a non-negative integer",
        )
    return Marking(obj)


def from_json(text: str) -> AcceptingPetriNet:
    """Decode and fully re-validate an accepting net.

    Raises SchemaViolation on malformed JSON, wrong shapes, or a decoded
    net that fails structural validation.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolationError(f"invalid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "top level must be an object")
    missing = {"places", "transitions", "arcs", "initial_marking", "final_markings"} - doc.keys()
    _expect(not missing, f"missing fields: {sorted(missing)}")

    net = PetriNet()
    _expect(isinstance(doc["places"], list), "places must be an array")
    for pid in doc["places"]:
        _expect(isinstance(pid, str), "place ids must be text")
        _expect(pid not in net.places, f"duplicate place id {pid!r}")
        net.add_place(pid)
    _expect(isinstance(doc["transitions"], list), "transitions must be an array")
    for entry in doc["transitions"]:
        _expect(isinstance(entry, dict), "transition entries must be objects")
        tid = entry.get("id")
        _expect(isinstance(tid, str), "transition ids must be text")
        _expect(tid not in net.transitions, f"duplicate transition id {tid!r}")
        label = entry.get("label")
        _expect(
            label is None or isinstance(label, str),
            f"transition {tid!r} label must be text or null",
        )
        net.add_transition(tid, label)
    _expect(isinstance(doc["arcs"], list), "arcs must be an array")
    for entry in doc["arcs"]:
        _expect(
            isinstance(entry, list) and len(entry) == 3,
            "arc entries must be [source, target, weight]",
        )
        src, tgt, weight = entry
        _expect(isinstance(src, str) and isinstance(tgt, str), "arc endpoints must be text")
        _expect(
            isinstance(weight, int) and not isinstance(weight, bool) and weight >= 1,
            f"arc {src!r} -> {tgt!r} weight must be a positive integer",
        )
        _expect((src, tgt) not in net.arcs, f"duplicate arc {src!r} -> {tgt!r}")
        net.add_arc(src, tgt, weight)

    initial = _decode_marking(doc["initial_marking"], "initial_marking")
    _expect(isinstance(doc["final_markings"], list), "final_markings must be an array")
    _expect(len(doc["final_markings"]) >= 1, "final_markings must be non-empty")
    finals = [
        _decode_marking(m, f"final_markings[{i}]")
        for i, m in enumerate(doc["final_markings"])
    ]
    apn = AcceptingPetriNet(net, initial, finals)
    violations = apn.validate()
    _expect(not violations, "; ".join(violations))
    return apn


_PNML_NS = "http://www.pnml.org/version-2009/grammar/pnml"
_PTNET_TYPE = "http://www.pnml.org/version-2009/grammar/ptnet"


def to_pnml(apn: AcceptingPetriNet, net_id: str = "net1") -> str:
    """PNML text: one net, one page, final markings as a ProM-style annotation."""
    root = ET.Element("pnml", xmlns=_PNML_NS)
    net_el = ET.SubElement(root, "net", id=net_id, type=_PTNET_TYPE)
    page = ET.SubElement(net_el, "page", id="page1")
    for pid in apn.net.places:
        p_el = ET.SubElement(page, "place", id=pid)
        tokens = apn.initial_marking.get(pid, 0)
        if tokens:
            mark_el = ET.SubElement(p_el, "initialMarking")
            ET.SubElement(mark_el, "text").text = str(tokens)
    for trans in apn.net.transitions.values():
        t_el = ET.SubElement(page, "transition", id=trans.id)
        if trans.label is not None:
            name_el = ET.SubElement(t_el, "name")
            ET.SubElement(name_el, "text").text = trans.label
    for i, ((src, tgt), weight) in enumerate(apn.net.arcs.items()):
        a_el = ET.SubElement(page, "arc", id=f"arc{i}", source=src, target=tgt)
        if weight != 1:
            insc = ET.SubElement(a_el, "inscription")
            ET.SubElement(insc, "text").text = str(weight)
    finals = ET.SubElement(net_el, "finalmarkings")
    for marking in apn.final_markings:
        m_el = ET.SubElement(finals, "marking")
        for pid in apn.net.places:
            if pid in marking:
                p_ref = ET.SubElement(m_el, "place", idref=pid)
                ET.SubElement(p_ref, "text").text = str(marking[pid])
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"
