"""Probability of solution vectors.

A solution's probability is the product of its per-line survival chains and
the capacity-state probabilities of the node loads it induces:

* every transition from one coordinate to the next contributes a binomial
  survival factor (each of the ``prev`` units independently survives the
  arc with its rate);
* the perfect line additionally enters through its entry arc from the
  ``b`` input units, while a rework line's first coordinate is the rework
  selection count and carries no factor;
* the last coordinate of every line contributes the all-survive factor
  ``rate ** count`` for the final output arc;
* every node contributes the probability of the capacity level equal to
  its load.

The measure is the exact one the solver reproduces; it is not normalized
over the solution space (see ``engine.SolveOptions.warn_r_gt_1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .network import Network, ProductLineSpec


@dataclass(frozen=True)
class SolutionRecord:
    """One feasible solution: its rank, index tuple, values, probability."""

    global_index: int
    z: tuple[int, ...]
    x: tuple[int, ...]
    prob: float


def binomial_survival(prev: int, cur: int, rate: float) -> float:
    """Probability that exactly ``cur`` of ``prev`` units survive an arc.

    ``C(prev, cur) * rate**cur * (1 - rate)**(prev - cur)``, with the
    convention 0**0 == 1 so rates of 0 and 1 stay exact.
    """
    if not 0 <= cur <= prev:
        raise ValueError(f"need 0 <= cur <= prev, got cur={cur} prev={prev}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate {rate} outside [0, 1]")
    return comb(prev, cur) * rate ** cur * (1.0 - rate) ** (prev - cur)


def line_probability(line: ProductLineSpec, v: Sequence[int], b: int) -> float:
    """Probability of one line's vector ``v`` given ``b`` input units."""
    rates = [c.rate for c in line.coords]
    p = 1.0
    if line.is_perfect:
        if line.entry_rate is None:
            raise ValueError("perfect line is missing its entry rate")
        p *= binomial_survival(b, v[0], line.entry_rate)
    for t in range(1, len(v)):
        p *= binomial_survival(v[t - 1], v[t], rates[t - 1])
    return p * rates[-1] ** v[-1]


def node_state_probability(net: Network, node_id: int, load: int) -> float:
    """Probability that the node's capacity equals ``load``."""
    for nd in net.nodes:
        if nd.id == node_id:
            if load > nd.capacity.max_level:
                raise ValueError(
                    f"load {load} exceeds node {node_id} max level {nd.capacity.max_level}")
            if load < 0:
                raise ValueError("load must be non-negative")
            return nd.capacity.probs[load]
    raise ValueError(f"no node with id {node_id}")


def solution_probability(net: Network, x: Sequence[int], b: int) -> float:
    """Probability of a full solution vector (must satisfy the chain)."""
    p = 1.0
    off = 0
    for ln in net.lines:
        c = len(ln.coords)
        p *= line_probability(ln, x[off:off + c], b)
        off += c
    for nd in net.nodes:
        load = sum(x[net.flat_index(ref)] for ref in nd.load_coords)
        p *= node_state_probability(net, nd.id, load)
    return p
