"""Four-stage solver: per-line enumeration, nested combination, feasibility
filtering, probability summation.

The nested index space (line-1 index outermost, last line fastest) is
evaluated in fixed-size blocks of consecutive outer indices.  Inside a
block, the combined features of the inner lines (node loads, split sums,
final-output counts, probabilities) are precomputed once per solve and the
constraint system is applied as vectorized comparisons, so the whole tuple
space is visited without materializing it.

Determinism: blocks are defined by the instance alone (never by worker
count), each block's partial reliability is an exactly rounded ``fsum``,
and partials are combined in ascending block order with Neumaier
compensation — reports are bit-identical for any ``workers`` or ``prune``
setting.  Pruning only skips blocks that provably contain no feasible
tuple, so it changes neither the feasible count nor the reliability;
``total_tuples`` is always the arithmetic product of the per-line counts.
"""
from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .enumeration import line_vector_list
from .network import Network, validate_network
from .probability import SolutionRecord, line_probability

_BLOCK_CELLS = 1 << 20


@dataclass(frozen=True)
class SolveOptions:
    prune: bool = False
    workers: int = 1
    record_solutions: bool = False
    warn_r_gt_1: bool = True


@dataclass(frozen=True)
class RunReport:
    """Result of one (b, d) evaluation.

    ``line_counts`` are the per-line vector counts m_1..m_phi,
    ``total_tuples`` their product S, ``feasible_count`` the number s of
    feasible solutions, and ``reliability`` the summed probability R.
    Structurally impossible instances carry the ``no-feasible`` flag
    instead of being dropped.
    """

    b: int
    d: int
    line_counts: tuple[int, ...]
    total_tuples: int
    feasible_count: int
    reliability: float
    elapsed_seconds: float
    flags: tuple[str, ...] = ()
    solutions: tuple[SolutionRecord, ...] | None = None


@dataclass(frozen=True)
class SweepSummary:
    """Arithmetic means over the unflagged rows of a sweep."""

    rows: int
    time_avg: float
    tuples_avg: float
    feasible_avg: float
    reliability_avg: float
    s_star: float | None = None
    tuples_ratio: float | None = None


def _neumaier_sum(values: Iterable[float]) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


class _Features:
    """Per-line (or combined) node-load, split, output and probability arrays."""

    __slots__ = ("count", "load", "split", "last", "prob")

    def __init__(self, count, load, split, last, prob):
        self.count = count
        self.load = load
        self.split = split
        self.last = last
        self.prob = prob


def _line_features(net: Network, li: int, vectors, b: int) -> _Features:
    ln = net.lines[li]
    count = len(vectors)
    vec = np.asarray(vectors, dtype=np.int32).reshape(count, len(ln.coords))
    prob = np.array([line_probability(ln, v, b) for v in vectors], dtype=np.float64)
    load = np.zeros((count, len(net.nodes)), dtype=np.int32)
    for k, nd in enumerate(net.nodes):
        for line, pos in nd.load_coords:
            if line == li + 1:
                load[:, k] += vec[:, pos - 1]
    split = np.zeros((count, len(net.splits)), dtype=np.int32)
    for t, sp in enumerate(net.splits):
        for line, pos in sp.members:
            if line == li + 1:
                split[:, t] += vec[:, pos - 1]
        if sp.feeder[0] == li + 1:
            split[:, t] -= vec[:, sp.feeder[1] - 1]
    return _Features(count, load, split, vec[:, -1].astype(np.int32), prob)


def _combine(a: _Features, b: _Features) -> _Features:
    load = (a.load[:, None, :] + b.load[None, :, :]).reshape(-1, a.load.shape[1])
    split = (a.split[:, None, :] + b.split[None, :, :]).reshape(-1, a.split.shape[1])
    last = np.add.outer(a.last, b.last).ravel().astype(np.int32)
    prob = np.multiply.outer(a.prob, b.prob).ravel()
    return _Features(a.count * b.count, load, split, last, prob)


def _col_range(col: np.ndarray) -> tuple[int, int]:
    if col.size == 0:
        return 0, 0
    return int(col.min()), int(col.max())


def solve(net: Network, b: int, d: int, opts: SolveOptions | None = None) -> RunReport:
    """Evaluate one (b, d) instance and return its RunReport."""
    opts = opts or SolveOptions()
    if not isinstance(b, int) or not isinstance(d, int) or b < 1 or not 1 <= d <= b:
        raise ValueError("need integers with b >= 1 and 1 <= d <= b")
    if opts.workers < 1:
        raise ValueError("workers must be >= 1")
    findings = validate_network(net)
    if findings:
        raise ValueError(f"invalid network: {findings[0]}")

    t0 = time.perf_counter()
    vectors = [line_vector_list(ln, b, d) for ln in net.lines]
    counts = tuple(len(v) for v in vectors)
    total = math.prod(counts)

    def _empty_report(flag: bool = True) -> RunReport:
        return RunReport(
            b=b, d=d, line_counts=counts, total_tuples=total,
            feasible_count=0, reliability=0.0,
            elapsed_seconds=time.perf_counter() - t0,
            flags=("no-feasible",) if flag else (),
            solutions=() if opts.record_solutions else None)

    if total == 0:
        return _empty_report()

    outer = _line_features(net, 0, vectors[0], b)
    if len(net.lines) > 1:
        inner = _line_features(net, 1, vectors[1], b)
        for li in range(2, len(net.lines)):
            inner = _combine(inner, _line_features(net, li, vectors[li], b))
    else:
        inner = _Features(1,
                          np.zeros((1, len(net.nodes)), dtype=np.int32),
                          np.zeros((1, len(net.splits)), dtype=np.int32),
                          np.zeros(1, dtype=np.int32),
                          np.ones(1, dtype=np.float64))
    m1, m_in = outer.count, inner.count

    # Classify constraints: fold outer-only ones into a row mask, inner-only
    # ones into a static inner mask, keep the genuinely mixed ones for the
    # per-block sweep, and fail fast when a bound can never be met.
    outer_ok = np.ones(m1, dtype=bool)
    inner_ok = np.ones(m_in, dtype=bool)
    mixed_bounds: list[tuple[np.ndarray, np.ndarray, int, int]] = []
    node_tabs = []
    const_factor = 1.0
    varying_nodes: list[int] = []

    for k, nd in enumerate(net.nodes):
        node_tabs.append(np.asarray(nd.capacity.probs, dtype=np.float64))
        lo = max(d, nd.capacity.min_level)
        hi = min(b, nd.capacity.max_level)
        ocol, icol = outer.load[:, k], inner.load[:, k]
        omin, omax = _col_range(ocol)
        imin, imax = _col_range(icol)
        if omax + imax < lo or omin + imin > hi:
            return _empty_report()
        if omax == 0 and imax == 0:
            const_factor *= nd.capacity.probs[0]
            continue
        varying_nodes.append(k)
        if omin + imin >= lo and omax + imax <= hi:
            continue
        if imax == 0:
            outer_ok &= ocol >= lo
            outer_ok &= ocol <= hi
        elif omax == 0:
            inner_ok &= icol >= lo
            inner_ok &= icol <= hi
        else:
            mixed_bounds.append((ocol, icol, lo, hi))

    mixed_upper: list[tuple[np.ndarray, np.ndarray]] = []
    for t in range(len(net.splits)):
        ocol, icol = outer.split[:, t], inner.split[:, t]
        omin, omax = _col_range(ocol)
        imin, imax = _col_range(icol)
        if omax + imax <= 0:
            continue
        if omin + imin > 0:
            return _empty_report()
        if imin == imax == 0:
            outer_ok &= ocol <= 0
        elif omin == omax == 0:
            inner_ok &= icol <= 0
        else:
            mixed_upper.append((ocol, icol))

    mixed_output = False
    omin, omax = _col_range(outer.last)
    inner_last_min, inner_last_max = _col_range(inner.last)
    if omax + inner_last_max < d:
        return _empty_report()
    if omin + inner_last_min < d:
        if inner_last_max == 0:
            outer_ok &= outer.last >= d
        elif omax == 0:
            inner_ok &= inner.last >= d
        else:
            mixed_output = True

    radices = counts[1:]
    vec_lists = vectors
    block = max(1, _BLOCK_CELLS // m_in)
    blocks = [(i0, min(i0 + block, m1)) for i0 in range(0, m1, block)]

    upper_inner_min = [int(icol.min()) for _, icol in mixed_upper]
    bound_ranges = [(int(icol.min()), int(icol.max())) for _, icol, _, _ in mixed_bounds]

    def _provably_empty(i0: int, i1: int) -> bool:
        if not outer_ok[i0:i1].any():
            return True
        for (ocol, _, lo, hi), (imn, imx) in zip(mixed_bounds, bound_ranges):
            seg = ocol[i0:i1]
            if int(seg.max()) + imx < lo or int(seg.min()) + imn > hi:
                return True
        for (ocol, _), imn in zip(mixed_upper, upper_inner_min):
            if int(ocol[i0:i1].min()) + imn > 0:
                return True
        if mixed_output and int(outer.last[i0:i1].max()) + inner_last_max < d:
            return True
        return False

    def _eval_block(i0: int, i1: int):
        if opts.prune and _provably_empty(i0, i1):
            return 0, 0.0, []
        mask = outer_ok[i0:i1, None] & inner_ok[None, :]
        for ocol, icol, lo, hi in mixed_bounds:
            v = ocol[i0:i1, None] + icol[None, :]
            mask &= v >= lo
            mask &= v <= hi
        for ocol, icol in mixed_upper:
            mask &= (ocol[i0:i1, None] + icol[None, :]) <= 0
        if mixed_output:
            mask &= (outer.last[i0:i1, None] + inner.last[None, :]) >= d
        flat = np.flatnonzero(mask)
        if flat.size == 0:
            return 0, 0.0, []
        g_idx, u_idx = np.divmod(flat, m_in)
        z1 = g_idx + i0
        p = outer.prob[z1] * inner.prob[u_idx]
        if const_factor != 1.0:
            p = p * const_factor
        for k in varying_nodes:
            p *= node_tabs[k][outer.load[z1, k] + inner.load[u_idx, k]]
        r_part = math.fsum(p.tolist())
        records = []
        if opts.record_solutions:
            for j in range(flat.size):
                u = int(u_idx[j])
                zs = []
                rem = u
                for m in reversed(radices):
                    rem, zk = divmod(rem, m)
                    zs.append(zk)
                zs.reverse()
                z = (int(z1[j]), *zs)
                x: tuple[int, ...] = ()
                for li, zi in enumerate(z):
                    x += vec_lists[li][zi]
                records.append(SolutionRecord(
                    global_index=int(z1[j]) * m_in + u, z=z, x=x,
                    prob=float(p[j])))
        return int(flat.size), r_part, records

    if opts.workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as ex:
            parts = list(ex.map(lambda blk: _eval_block(*blk), blocks))
    else:
        parts = [_eval_block(*blk) for blk in blocks]

    s = sum(p[0] for p in parts)
    reliability = _neumaier_sum(p[1] for p in parts)
    solutions: tuple[SolutionRecord, ...] | None = None
    if opts.record_solutions:
        solutions = tuple(rec for p in parts for rec in p[2])
    if opts.warn_r_gt_1 and reliability > 1.0:
        warnings.warn(f"computed reliability {reliability} exceeds 1; the "
                      "solution measure is not normalized", RuntimeWarning)
    return RunReport(
        b=b, d=d, line_counts=counts, total_tuples=total,
        feasible_count=s, reliability=reliability,
        elapsed_seconds=time.perf_counter() - t0,
        flags=("no-feasible",) if s == 0 else (),
        solutions=solutions)


def sweep(net: Network, bs: Iterable[int], opts: SolveOptions | None = None
          ) -> list[RunReport]:
    """Solve every (b, d) with d = 1..b for each b; flagged rows included."""
    reports = []
    for b in bs:
        for d in range(1, b + 1):
            reports.append(solve(net, b, d, opts))
    return reports


def summarize(reports: Sequence[RunReport], s_star: float | None = None
              ) -> SweepSummary:
    """Mean T, S, s, R over the unflagged reports, plus S_avg / s_star."""
    if not reports:
        raise ValueError("no reports to summarize")
    rows = [r for r in reports if not r.flags]
    if not rows:
        raise ValueError("every report is flagged structurally infeasible")
    n = len(rows)
    tuples_avg = sum(r.total_tuples for r in rows) / n
    return SweepSummary(
        rows=n,
        time_avg=math.fsum(r.elapsed_seconds for r in rows) / n,
        tuples_avg=tuples_avg,
        feasible_avg=sum(r.feasible_count for r in rows) / n,
        reliability_avg=math.fsum(r.reliability for r in rows) / n,
        s_star=s_star,
        tuples_ratio=None if s_star is None else tuples_avg / s_star)
