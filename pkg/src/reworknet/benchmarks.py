"""Built-in benchmark networks.

Five configurations: ``test1`` is the two-node single-rework demonstration
network with its published state distribution; ``test2`` reuses that
topology under the uniform distribution (ten equiprobable levels per node,
arc rate 0.99); ``test3``..``test5`` are the moderate-size rework networks
under the same uniform distribution.  Caps and rates are encoded exactly as
required to reproduce the reference result tables, including the two final
rework arcs whose rates differ from the surrounding arcs (0.9 in test1,
0.01 in test4).
"""
from __future__ import annotations

from .network import (
    CoordinateSpec,
    Network,
    NodeSpec,
    ProductLineSpec,
    SplitSpec,
    StateDistribution,
)

BUILTIN_NAMES = ("test1", "test2", "test3", "test4", "test5")

_UNIFORM = StateDistribution(probs=(0.1,) * 10)


def _line(kind: str, rates: list[float], cap: int, entry: float | None = None) -> ProductLineSpec:
    return ProductLineSpec(
        kind=kind,
        coords=tuple(CoordinateSpec(cap=cap, rate=r) for r in rates),
        entry_rate=entry,
    )


def _test1() -> Network:
    return Network(
        name="test1",
        lines=(
            _line("perfect", [0.9, 0.8], cap=5, entry=0.99),
            _line("rework", [0.95, 0.7, 0.9], cap=5),
        ),
        nodes=(
            NodeSpec(
                id=1,
                capacity=StateDistribution(
                    probs=(0.002, 0.003, 0.005, 0.010, 0.030, 0.050, 0.100, 0.800)),
                load_coords=((1, 1), (2, 2)),
            ),
            NodeSpec(
                id=2,
                capacity=StateDistribution(
                    probs=(0.003, 0.005, 0.010, 0.012, 0.070, 0.900)),
                load_coords=((1, 2), (2, 1), (2, 3)),
            ),
        ),
        splits=(SplitSpec(feeder=(1, 1), members=((1, 2), (2, 1))),),
    )


def _test2() -> Network:
    return Network(
        name="test2",
        lines=(
            _line("perfect", [0.99, 0.99], cap=9, entry=0.99),
            _line("rework", [0.99, 0.99, 0.99], cap=9),
        ),
        nodes=(
            NodeSpec(id=1, capacity=_UNIFORM, load_coords=((1, 1), (2, 2))),
            NodeSpec(id=2, capacity=_UNIFORM, load_coords=((1, 2), (2, 1), (2, 3))),
        ),
        splits=(SplitSpec(feeder=(1, 1), members=((1, 2), (2, 1))),),
    )


def _test3() -> Network:
    return Network(
        name="test3",
        lines=(
            _line("perfect", [0.99] * 4, cap=9, entry=0.99),
            _line("rework", [0.99] * 4, cap=9),
        ),
        nodes=(
            NodeSpec(id=1, capacity=_UNIFORM, load_coords=((1, 1),)),
            NodeSpec(id=2, capacity=_UNIFORM, load_coords=((1, 2), (2, 2))),
            NodeSpec(id=3, capacity=_UNIFORM, load_coords=((1, 3), (2, 1), (2, 3))),
            NodeSpec(id=4, capacity=_UNIFORM, load_coords=((1, 4), (2, 4))),
        ),
        splits=(SplitSpec(feeder=(1, 2), members=((1, 3), (2, 1))),),
    )


def _test4() -> Network:
    return Network(
        name="test4",
        lines=(
            _line("perfect", [0.99] * 6, cap=9, entry=0.99),
            _line("rework", [0.99] * 5 + [0.01], cap=9),
        ),
        nodes=(
            NodeSpec(id=1, capacity=_UNIFORM, load_coords=((1, 1),)),
            NodeSpec(id=2, capacity=_UNIFORM, load_coords=((1, 2), (2, 2))),
            NodeSpec(id=3, capacity=_UNIFORM, load_coords=((1, 3), (2, 3))),
            NodeSpec(id=4, capacity=_UNIFORM, load_coords=((1, 4), (2, 1), (2, 4))),
            NodeSpec(id=5, capacity=_UNIFORM, load_coords=((1, 5), (2, 5))),
            NodeSpec(id=6, capacity=_UNIFORM, load_coords=((1, 6), (2, 6))),
        ),
        splits=(SplitSpec(feeder=(1, 3), members=((1, 4), (2, 1))),),
    )


def _test5() -> Network:
    return Network(
        name="test5",
        lines=(
            _line("perfect", [0.99] * 6, cap=9, entry=0.99),
            _line("rework", [0.99] * 6, cap=9),
            _line("rework", [0.99] * 3, cap=9),
        ),
        nodes=(
            NodeSpec(id=1, capacity=_UNIFORM, load_coords=((1, 1),)),
            NodeSpec(id=2, capacity=_UNIFORM, load_coords=((1, 2), (2, 2))),
            NodeSpec(id=3, capacity=_UNIFORM, load_coords=((1, 3), (2, 3))),
            NodeSpec(id=4, capacity=_UNIFORM, load_coords=((1, 4), (2, 1), (2, 4))),
            NodeSpec(id=5, capacity=_UNIFORM, load_coords=((1, 5), (2, 5), (3, 2))),
            NodeSpec(id=6, capacity=_UNIFORM, load_coords=((1, 6), (2, 6), (3, 3))),
        ),
        splits=(
            SplitSpec(feeder=(1, 3), members=((1, 4), (2, 1))),
            SplitSpec(feeder=(1, 5), members=((1, 6), (3, 1))),
        ),
    )


_BUILDERS = {
    "test1": _test1,
    "test2": _test2,
    "test3": _test3,
    "test4": _test4,
    "test5": _test5,
}


def builtin_network(name: str) -> Network:
    """Return one of the built-in benchmarks (``test1`` .. ``test5``)."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown builtin network {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None
    return builder()
