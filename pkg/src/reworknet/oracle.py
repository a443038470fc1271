"""Brute-force reference solver and random instance generator.

``oracle_solve`` enumerates the full per-coordinate box (every coordinate
independently 0..cap, no line-walk structure) and filters it through the
constraint system and probability model written out from first principles.
It deliberately shares no code with the enumeration, feasibility, or
probability modules: the duplication is the point, so that a bug common to
the main pipeline cannot hide in its own reference.

``random_small_network`` produces tiny valid networks (the canonical split
structure: each rework line is anchored at a split whose members are the
feeder's continuing coordinate plus the rework first coordinates) for
differential testing of the engine against the oracle.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from .engine import RunReport
from .network import (
    CoordinateSpec,
    Network,
    NodeSpec,
    ProductLineSpec,
    SplitSpec,
    StateDistribution,
)

BOX_LIMIT = 10_000_000


def oracle_solve(net: Network, b: int, d: int, box_limit: int = BOX_LIMIT) -> RunReport:
    """Exhaustively evaluate every vector in the coordinate box.

    Raises ValueError when the box exceeds ``box_limit`` or (b, d) is
    invalid.  ``total_tuples`` reports the box size, not the nested-walk
    count; ``line_counts`` is left empty.
    """
    if not 1 <= d <= b:
        raise ValueError("d must satisfy 1 <= d <= b")
    caps = [c.cap for ln in net.lines for c in ln.coords]
    box = 1
    for cap in caps:
        box *= cap + 1
    if box > box_limit:
        raise ValueError(f"coordinate box has {box} vectors, above the limit {box_limit}")

    t0 = time.perf_counter()

    # Local, self-contained view of the network.
    spans = []
    start = 0
    for ln in net.lines:
        spans.append((start, start + len(ln.coords)))
        start += len(ln.coords)

    def flat(ref):
        line, pos = ref
        return spans[line - 1][0] + pos - 1

    node_info = [(tuple(flat(r) for r in nd.load_coords),
                  max(d, nd.capacity.min_level),
                  min(b, nd.capacity.max_level),
                  nd.capacity.probs) for nd in net.nodes]
    split_info = [(flat(sp.feeder), tuple(flat(r) for r in sp.members))
                  for sp in net.splits]
    last_idx = [hi - 1 for _, hi in spans]
    line_rates = [[c.rate for c in ln.coords] for ln in net.lines]
    entries = [ln.entry_rate for ln in net.lines]
    perfect = [ln.is_perfect for ln in net.lines]

    def choose(n: int, k: int) -> int:
        return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))

    def surv(prev: int, cur: int, rate: float) -> float:
        return choose(prev, cur) * rate ** cur * (1.0 - rate) ** (prev - cur)

    def ok(x) -> bool:
        for a, z in spans:
            prev = x[a]
            for i in range(a + 1, z):
                if x[i] > prev:
                    return False
                prev = x[i]
        for coords, lo, hi, _ in node_info:
            load = 0
            for i in coords:
                load += x[i]
            if load < lo or load > hi:
                return False
        for feeder, members in split_info:
            total = 0
            for i in members:
                total += x[i]
            if total > x[feeder]:
                return False
        out = 0
        for i in last_idx:
            out += x[i]
        return out >= d

    def prob(x) -> float:
        p = 1.0
        for (a, z), rates, entry, is_perfect in zip(spans, line_rates, entries, perfect):
            if is_perfect:
                p *= surv(b, x[a], entry)
            for i in range(a + 1, z):
                p *= surv(x[i - 1], x[i], rates[i - 1 - a])
            p *= rates[-1] ** x[z - 1]
        for coords, _, _, probs in node_info:
            load = 0
            for i in coords:
                load += x[i]
            p *= probs[load]
        return p

    s = 0
    terms = []
    for x in itertools.product(*(range(cap + 1) for cap in caps)):
        if ok(x):
            s += 1
            terms.append(prob(x))
    return RunReport(
        b=b, d=d, line_counts=(), total_tuples=box,
        feasible_count=s, reliability=math.fsum(terms),
        elapsed_seconds=time.perf_counter() - t0,
        flags=("no-feasible",) if s == 0 else ())


@dataclass(frozen=True)
class RandomNetworkParams:
    """Bounds for the random generator; defaults keep boxes <= 4**9."""

    seed: int
    max_lines: int = 3
    max_coords_per_line: int = 3
    max_cap: int = 3
    rate_step: float = 0.05


def random_small_network(params: RandomNetworkParams) -> Network:
    """Deterministic (per seed) small valid network.

    Every coordinate lands in exactly one node load set, every rework line
    is anchored at a split carrying the feeder's continuing coordinate, and
    distributions are renormalized — the result always passes
    ``validate_network``.  Rates include the exact 0.0 and 1.0 endpoints to
    exercise boundary branches.
    """
    import random as _random

    rng = _random.Random(params.seed)
    steps = round(1.0 / params.rate_step)

    def rate() -> float:
        return rng.randint(0, steps) * params.rate_step

    # splits need a continuing coordinate after the feeder, so rework lines
    # only exist when some earlier line can be two coordinates long
    n_lines = rng.randint(1, params.max_lines) if params.max_coords_per_line > 1 else 1
    lengths = [rng.randint(1, params.max_coords_per_line) for _ in range(n_lines)]
    if n_lines > 1:
        lengths[0] = max(lengths[0], 2)
    lines = []
    for i, length in enumerate(lengths):
        coords = tuple(CoordinateSpec(cap=rng.randint(0, params.max_cap), rate=rate())
                       for _ in range(length))
        lines.append(ProductLineSpec(
            kind="perfect" if i == 0 else "rework",
            coords=coords,
            entry_rate=rate() if i == 0 else None))

    # Anchor each rework line: feeder on an earlier line with room for a
    # continuing coordinate; rework lines sharing a feeder share the split.
    split_members: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for j in range(2, n_lines + 1):
        candidates = [(l, p)
                      for l in range(1, j)
                      for p in range(1, len(lines[l - 1].coords))]
        feeder = rng.choice(candidates)
        members = split_members.setdefault(feeder, [(feeder[0], feeder[1] + 1)])
        members.append((j, 1))
    splits = tuple(SplitSpec(feeder=f, members=tuple(m))
                   for f, m in sorted(split_members.items()))

    refs = [(li + 1, pos + 1)
            for li, ln in enumerate(lines) for pos in range(len(ln.coords))]
    rng.shuffle(refs)
    n_nodes = rng.randint(1, len(refs))
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    for k, ref in enumerate(refs):
        if k < n_nodes:
            buckets[k].append(ref)
        else:
            buckets[rng.randrange(n_nodes)].append(ref)

    nodes = []
    for k, bucket in enumerate(buckets):
        max_level = rng.randint(0, 2 * params.max_cap)
        if rng.random() < 0.25:
            probs = [0.0] * (max_level + 1)
            probs[rng.randint(0, max_level)] = 1.0
        else:
            weights = [rng.randint(0, steps) * params.rate_step
                       for _ in range(max_level + 1)]
            total = sum(weights)
            if total == 0.0:
                weights[-1] = 1.0
                total = 1.0
            probs = [w / total for w in weights]
        min_level = 1 if (max_level >= 1 and rng.random() < 0.15) else 0
        nodes.append(NodeSpec(
            id=k + 1,
            capacity=StateDistribution(probs=tuple(probs), min_level=min_level),
            load_coords=tuple(sorted(bucket))))

    return Network(name=f"random-{params.seed}", lines=tuple(lines),
                   nodes=tuple(nodes), splits=splits)
