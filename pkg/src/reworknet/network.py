"""Data model for one-batch preempt deterioration-effect multi-rework networks.

A network is described in activity-on-arc form: every coordinate is an arc
of a production line, addressed by a 1-based ``(line, position)`` pair or by
its 0-based flat index (line-major order).  All model values are immutable
after construction and safe to share between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

CoordRef = tuple[int, int]
SolutionVector = tuple[int, ...]

PROB_SUM_TOL = 1e-9


class NetworkError(ValueError):
    """Invalid network document or network value.

    ``path`` locates the offending field, e.g. ``nodes[1].capacity_prob``.
    """

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class StateDistribution:
    """Discrete capacity distribution of a node.

    ``probs[l]`` is the probability that the node's capacity equals ``l``;
    levels run 0..max_level and the probabilities must sum to 1.
    """

    probs: tuple[float, ...]
    min_level: int = 0

    @property
    def max_level(self) -> int:
        return len(self.probs) - 1

    def prob(self, level: int) -> float:
        if not 0 <= level <= self.max_level:
            raise ValueError(f"level {level} outside 0..{self.max_level}")
        return self.probs[level]


@dataclass(frozen=True)
class CoordinateSpec:
    """One arc of a production line.

    ``cap`` bounds the WIP count on the arc.  ``rate`` is the survival
    probability governing the transition out of this coordinate; for the
    last coordinate of a line it is the final output arc rate.
    """

    cap: int
    rate: float


@dataclass(frozen=True)
class ProductLineSpec:
    """A production line: the single perfect line or one rework line."""

    kind: str  # "perfect" | "rework"
    coords: tuple[CoordinateSpec, ...]
    entry_rate: float | None = None

    @property
    def is_perfect(self) -> bool:
        return self.kind == "perfect"


@dataclass(frozen=True)
class NodeSpec:
    """A node with a random capacity and the coordinates that load it."""

    id: int
    capacity: StateDistribution
    load_coords: tuple[CoordRef, ...]


@dataclass(frozen=True)
class SplitSpec:
    """Split constraint: sum of member coordinates <= feeder coordinate."""

    feeder: CoordRef
    members: tuple[CoordRef, ...]


@dataclass(frozen=True)
class Network:
    """Complete problem description.

    Lines are 1-indexed with line 1 the perfect line.  The flat coordinate
    order is line-major: line 1's coordinates first, then line 2's, ...
    """

    name: str
    lines: tuple[ProductLineSpec, ...]
    nodes: tuple[NodeSpec, ...]
    splits: tuple[SplitSpec, ...]

    @property
    def coord_count(self) -> int:
        return sum(len(ln.coords) for ln in self.lines)

    def line_offsets(self) -> tuple[int, ...]:
        offs = [0]
        for ln in self.lines:
            offs.append(offs[-1] + len(ln.coords))
        return tuple(offs)

    def flat_index(self, ref: CoordRef) -> int:
        line, pos = ref
        if not 1 <= line <= len(self.lines):
            raise NetworkError(f"line {line} does not exist")
        if not 1 <= pos <= len(self.lines[line - 1].coords):
            raise NetworkError(f"position {pos} does not exist in line {line}")
        return self.line_offsets()[line - 1] + pos - 1

    def coord(self, ref: CoordRef) -> CoordinateSpec:
        line, pos = ref
        self.flat_index(ref)
        return self.lines[line - 1].coords[pos - 1]

    def coord_refs(self) -> Iterator[CoordRef]:
        for li, ln in enumerate(self.lines, start=1):
            for pos in range(1, len(ln.coords) + 1):
                yield (li, pos)

    def line_values(self, x: Sequence[int], line: int) -> tuple[int, ...]:
        """Slice a flat solution vector down to one line's values."""
        offs = self.line_offsets()
        return tuple(x[offs[line - 1]:offs[line]])


# ---------------------------------------------------------------------------
# document loading / serialization
# ---------------------------------------------------------------------------

def _expect(doc: Any, key: str, types, path: str, optional: bool = False):
    if not isinstance(doc, dict):
        raise NetworkError("expected an object", path)
    if key not in doc:
        if optional:
            return None
        raise NetworkError(f"missing required key '{key}'", path)
    val = doc[key]
    if not isinstance(val, types) or isinstance(val, bool):
        raise NetworkError(f"key '{key}' has wrong type", f"{path}.{key}")
    return val


def _coord_ref(raw: Any, path: str) -> CoordRef:
    if (not isinstance(raw, (list, tuple)) or len(raw) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)):
        raise NetworkError("coordinate reference must be [line, pos]", path)
    return (raw[0], raw[1])


def load_network(doc: dict) -> Network:
    """Build and validate a Network from its document form.

    Raises NetworkError (with a field path) on schema violations, dangling
    coordinate references, non-normalized distributions, or a wrong number
    of perfect lines.
    """
    name = _expect(doc, "name", str, "$")

    raw_lines = _expect(doc, "lines", list, "$")
    lines = []
    for i, rl in enumerate(raw_lines):
        path = f"lines[{i}]"
        kind = _expect(rl, "kind", str, path)
        if kind not in ("perfect", "rework"):
            raise NetworkError("kind must be 'perfect' or 'rework'", f"{path}.kind")
        entry = _expect(rl, "entry_rate", (int, float), path, optional=True)
        raw_coords = _expect(rl, "coords", list, path)
        coords = []
        for j, rc in enumerate(raw_coords):
            cpath = f"{path}.coords[{j}]"
            cap = _expect(rc, "cap", int, cpath)
            rate = _expect(rc, "rate", (int, float), cpath)
            coords.append(CoordinateSpec(cap=cap, rate=float(rate)))
        lines.append(ProductLineSpec(
            kind=kind, coords=tuple(coords),
            entry_rate=None if entry is None else float(entry)))

    raw_nodes = _expect(doc, "nodes", list, "$")
    nodes = []
    for i, rn in enumerate(raw_nodes):
        path = f"nodes[{i}]"
        nid = _expect(rn, "id", int, path)
        min_level = _expect(rn, "min_level", int, path, optional=True) or 0
        raw_prob = _expect(rn, "capacity_prob", dict, path)
        levels = {}
        for key, val in raw_prob.items():
            ppath = f"{path}.capacity_prob"
            try:
                lvl = int(key)
            except (TypeError, ValueError):
                raise NetworkError(f"level key '{key}' is not an integer", ppath)
            if lvl < 0:
                raise NetworkError(f"negative level {lvl}", ppath)
            if not isinstance(val, (int, float)) or isinstance(val, bool):
                raise NetworkError(f"probability for level {lvl} is not a number", ppath)
            levels[lvl] = float(val)
        if not levels:
            raise NetworkError("capacity_prob is empty", f"{path}.capacity_prob")
        max_level = max(levels)
        probs = tuple(levels.get(l, 0.0) for l in range(max_level + 1))
        raw_load = _expect(rn, "load_coords", list, path)
        load = tuple(_coord_ref(r, f"{path}.load_coords[{k}]")
                     for k, r in enumerate(raw_load))
        nodes.append(NodeSpec(
            id=nid,
            capacity=StateDistribution(probs=probs, min_level=min_level),
            load_coords=load))

    raw_splits = _expect(doc, "splits", list, "$")
    splits = []
    for i, rs in enumerate(raw_splits):
        path = f"splits[{i}]"
        feeder = _coord_ref(_expect(rs, "feeder", (list, tuple), path), f"{path}.feeder")
        raw_members = _expect(rs, "members", list, path)
        members = tuple(_coord_ref(r, f"{path}.members[{k}]")
                        for k, r in enumerate(raw_members))
        splits.append(SplitSpec(feeder=feeder, members=members))

    net = Network(name=name, lines=tuple(lines), nodes=tuple(nodes),
                  splits=tuple(splits))
    findings = validate_network(net)
    if findings:
        raise NetworkError(findings[0])
    return net


def serialize_network(net: Network) -> dict:
    """Inverse of load_network: emit the document form of a network."""
    doc_lines = []
    for ln in net.lines:
        d: dict[str, Any] = {"kind": ln.kind}
        if ln.entry_rate is not None:
            d["entry_rate"] = ln.entry_rate
        d["coords"] = [{"cap": c.cap, "rate": c.rate} for c in ln.coords]
        doc_lines.append(d)
    doc_nodes = []
    for nd in net.nodes:
        doc_nodes.append({
            "id": nd.id,
            "min_level": nd.capacity.min_level,
            "capacity_prob": {str(l): p for l, p in enumerate(nd.capacity.probs)},
            "load_coords": [list(r) for r in nd.load_coords],
        })
    doc_splits = [{"feeder": list(s.feeder), "members": [list(r) for r in s.members]}
                  for s in net.splits]
    return {"name": net.name, "nodes": doc_nodes, "lines": doc_lines,
            "splits": doc_splits}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _check_ref(net: Network, ref: CoordRef) -> bool:
    line, pos = ref
    return (1 <= line <= len(net.lines)
            and 1 <= pos <= len(net.lines[line - 1].coords))


def validate_network(net: Network) -> list[str]:
    """Collect every invariant violation; an empty report means usable."""
    findings: list[str] = []

    perfect = [i for i, ln in enumerate(net.lines) if ln.is_perfect]
    if len(perfect) != 1:
        findings.append(f"network must contain exactly one perfect line, found {len(perfect)}")
    elif perfect != [0]:
        findings.append("the perfect line must be line 1")
    for i, ln in enumerate(net.lines, start=1):
        if not ln.coords:
            findings.append(f"lines[{i - 1}]: line has no coordinates")
        if ln.is_perfect and ln.entry_rate is None:
            findings.append(f"lines[{i - 1}]: perfect line requires entry_rate")
        if not ln.is_perfect and ln.entry_rate is not None:
            findings.append(f"lines[{i - 1}]: rework line must not carry entry_rate")
        if ln.entry_rate is not None and not 0.0 <= ln.entry_rate <= 1.0:
            findings.append(f"lines[{i - 1}]: entry_rate {ln.entry_rate} outside [0, 1]")
        for j, c in enumerate(ln.coords):
            if c.cap < 0:
                findings.append(f"lines[{i - 1}].coords[{j}]: negative cap {c.cap}")
            if not 0.0 <= c.rate <= 1.0:
                findings.append(f"lines[{i - 1}].coords[{j}]: rate {c.rate} outside [0, 1]")

    seen_ids = set()
    for i, nd in enumerate(net.nodes):
        path = f"nodes[{i}] (id {nd.id})"
        if nd.id in seen_ids:
            findings.append(f"{path}: duplicate node id")
        seen_ids.add(nd.id)
        dist = nd.capacity
        if not 0 <= dist.min_level <= dist.max_level:
            findings.append(f"{path}: min_level {dist.min_level} outside 0..{dist.max_level}")
        if any(not 0.0 <= p <= 1.0 for p in dist.probs):
            findings.append(f"{path}: probabilities outside [0, 1]")
        total = math.fsum(dist.probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            findings.append(f"{path}: capacity probabilities sum to {total!r}, not 1")
        seen_refs = set()
        for ref in nd.load_coords:
            if not _check_ref(net, ref):
                findings.append(f"{path}: load coordinate {ref} does not exist")
            elif ref in seen_refs:
                findings.append(f"{path}: load coordinate {ref} referenced twice")
            seen_refs.add(ref)

    for i, sp in enumerate(net.splits):
        path = f"splits[{i}]"
        if not _check_ref(net, sp.feeder):
            findings.append(f"{path}: feeder {sp.feeder} does not exist")
        if not sp.members:
            findings.append(f"{path}: members is empty")
        seen_refs = set()
        for ref in sp.members:
            if not _check_ref(net, ref):
                findings.append(f"{path}: member {ref} does not exist")
            elif ref in seen_refs:
                findings.append(f"{path}: member {ref} referenced twice")
            seen_refs.add(ref)
        if sp.feeder in sp.members:
            findings.append(f"{path}: feeder {sp.feeder} may not be a member")

    return findings
