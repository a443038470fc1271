"""Exact reliability evaluation of one-batch preempt deterioration-effect
multi-state multi-rework networks."""

from .benchmarks import BUILTIN_NAMES, builtin_network
from .engine import RunReport, SolveOptions, SweepSummary, solve, summarize, sweep
from .enumeration import (
    IndexTuple,
    enumerate_binary,
    enumerate_line_vectors,
    enumerate_multistate,
    line_vector_list,
    nested_tuples,
)
from .feasibility import (
    ConstraintReport,
    check_chain,
    check_node_loads,
    check_output,
    check_split,
    feasible,
    is_feasible,
)
from .network import (
    CoordinateSpec,
    Network,
    NetworkError,
    NodeSpec,
    ProductLineSpec,
    SolutionVector,
    SplitSpec,
    StateDistribution,
    load_network,
    serialize_network,
    validate_network,
)
from .oracle import RandomNetworkParams, oracle_solve, random_small_network
from .probability import (
    SolutionRecord,
    binomial_survival,
    line_probability,
    node_state_probability,
    solution_probability,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "ConstraintReport",
    "CoordinateSpec",
    "IndexTuple",
    "Network",
    "NetworkError",
    "NodeSpec",
    "ProductLineSpec",
    "RandomNetworkParams",
    "RunReport",
    "SolutionRecord",
    "SolutionVector",
    "SolveOptions",
    "SplitSpec",
    "StateDistribution",
    "SweepSummary",
    "binomial_survival",
    "builtin_network",
    "check_chain",
    "check_node_loads",
    "check_output",
    "check_split",
    "enumerate_binary",
    "enumerate_line_vectors",
    "enumerate_multistate",
    "feasible",
    "is_feasible",
    "line_probability",
    "line_vector_list",
    "load_network",
    "nested_tuples",
    "node_state_probability",
    "oracle_solve",
    "random_small_network",
    "serialize_network",
    "solution_probability",
    "solve",
    "summarize",
    "sweep",
    "validate_network",
]
