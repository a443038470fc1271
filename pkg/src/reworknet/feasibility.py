"""Constraint system over assembled solution vectors.

Four constraints decide feasibility of a flat WIP-count vector:

* chain  — counts are non-increasing along every line, first value capped;
* node   — every node load stays within max(d, min_level) .. min(b, max_level);
* split  — at every split, member counts sum to at most the feeder count;
* output — the line-final counts sum to at least the demand d.

All functions are pure and safe for concurrent use.  ``feasible`` is the
short-circuiting form (checked node, split, output, chain — cheapest
discriminators first); ``is_feasible`` evaluates everything and names the
first violation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .network import Network


@dataclass(frozen=True)
class ConstraintReport:
    chain_ok: bool
    split_ok: bool
    node_ok: bool
    output_ok: bool
    first_violation: str | None = None

    @property
    def feasible(self) -> bool:
        return self.chain_ok and self.split_ok and self.node_ok and self.output_ok


def _require_dim(net: Network, x: Sequence[int]) -> None:
    if len(x) != net.coord_count:
        raise ValueError(
            f"solution vector has {len(x)} values, network has {net.coord_count} coordinates")


def check_chain(net: Network, x: Sequence[int]) -> bool:
    """Within every line the values are non-increasing and the first is capped."""
    _require_dim(net, x)
    off = 0
    for ln in net.lines:
        c = len(ln.coords)
        vals = x[off:off + c]
        off += c
        if vals[0] > ln.coords[0].cap:
            return False
        for a, b in zip(vals, vals[1:]):
            if b > a:
                return False
    return True


def check_split(net: Network, x: Sequence[int]) -> bool:
    """Every split's member counts sum to at most its feeder count."""
    _require_dim(net, x)
    for sp in net.splits:
        total = sum(x[net.flat_index(ref)] for ref in sp.members)
        if total > x[net.flat_index(sp.feeder)]:
            return False
    return True


def check_node_loads(net: Network, x: Sequence[int], b: int, d: int) -> bool:
    """Every node load lies in max(d, min_level) .. min(b, max_level)."""
    if not 1 <= d <= b:
        raise ValueError("d must satisfy 1 <= d <= b")
    _require_dim(net, x)
    for nd in net.nodes:
        load = sum(x[net.flat_index(ref)] for ref in nd.load_coords)
        if not max(d, nd.capacity.min_level) <= load <= min(b, nd.capacity.max_level):
            return False
    return True


def check_output(net: Network, x: Sequence[int], d: int) -> bool:
    """The last coordinates of all lines deliver at least d units together."""
    if d < 1:
        raise ValueError("d must be >= 1")
    _require_dim(net, x)
    offs = net.line_offsets()
    return sum(x[end - 1] for end in offs[1:]) >= d


def feasible(net: Network, x: Sequence[int], b: int, d: int) -> bool:
    """Short-circuit conjunction of the four constraint checks."""
    return (check_node_loads(net, x, b, d)
            and check_split(net, x)
            and check_output(net, x, d)
            and check_chain(net, x))


def is_feasible(net: Network, x: Sequence[int], b: int, d: int) -> ConstraintReport:
    """Evaluate all four constraints and name the first violated one."""
    node_ok = check_node_loads(net, x, b, d)
    split_ok = check_split(net, x)
    output_ok = check_output(net, x, d)
    chain_ok = check_chain(net, x)
    first = None
    if not node_ok:
        first = "node load outside its bounds"
    elif not split_ok:
        first = "split members exceed their feeder"
    elif not output_ok:
        first = f"total output below demand {d}"
    elif not chain_ok:
        first = "deterioration chain violated"
    return ConstraintReport(chain_ok=chain_ok, split_ok=split_ok,
                            node_ok=node_ok, output_ok=output_ok,
                            first_violation=first)
