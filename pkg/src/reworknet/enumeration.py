"""State-vector enumerators.

Four related schemes, all driven by the same carry/borrow walk:

* ``enumerate_binary`` — all binary vectors in ascending binary order.
* ``enumerate_multistate`` — all capped vectors in ascending mixed-radix
  order.
* ``enumerate_line_vectors`` — the per-line top-down walk: non-increasing
  (deterioration) vectors in strictly decreasing lexicographic order,
  starting from the per-coordinate caps clipped by the input count.
* ``nested_tuples`` — the odometer over per-line vector indices, last line
  fastest, used to combine per-line vectors into full solutions.

All enumerators are streaming iterators; each iterator is single-consumer,
but independent iterators may run concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .network import ProductLineSpec


def enumerate_binary(m: int) -> Iterator[tuple[int, ...]]:
    """Yield all 2**m binary vectors, read as ascending binary numbers.

    ``m = 0`` yields the single empty vector.
    """
    yield from enumerate_multistate([1] * m)


def enumerate_multistate(caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Yield all prod(cap_i + 1) vectors with 0 <= x_i <= cap_i.

    Ascending mixed-radix order starting at the all-zero vector, last
    coordinate fastest.
    """
    caps = list(caps)
    if any(c < 0 for c in caps):
        raise ValueError("caps must be non-negative")
    m = len(caps)
    x = [0] * m
    yield tuple(x)
    i = m - 1
    while i >= 0:
        if x[i] < caps[i]:
            x[i] += 1
            yield tuple(x)
            i = m - 1
        else:
            x[i] = 0
            i -= 1


def _top_down_walk(caps: tuple[int, ...], hi: int, floor: int
                   ) -> Iterator[tuple[int, ...]]:
    """Chained non-increasing vectors from the largest down, first >= floor."""
    if hi < floor:
        return
    n = len(caps)
    x = [hi]
    for cap in caps[1:]:
        x.append(min(x[-1], cap))
    yield tuple(x)
    i = n - 1
    while True:
        low = floor if i == 0 else 0
        if x[i] > low:
            x[i] -= 1
            for j in range(i + 1, n):
                x[j] = min(x[j - 1], caps[j])
            yield tuple(x)
            i = n - 1
        elif i == 0:
            return
        else:
            i -= 1


def enumerate_line_vectors(line: ProductLineSpec, b: int, d: int
                           ) -> Iterator[tuple[int, ...]]:
    """Yield the feasible deterioration vectors of one production line.

    Vectors are non-increasing, respect each coordinate's cap, and start at
    the largest vector (first value ``min(b, cap_1)``, trailing values
    chained through ``min``).  Emission is strictly decreasing
    lexicographic.  On the perfect line the first value never drops below
    ``d`` (any solution's total output is bounded by it, so the cut is
    lossless); rework lines run all the way down to the zero vector.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    if not 1 <= d <= b:
        raise ValueError("d must satisfy 1 <= d <= b")
    caps = tuple(c.cap for c in line.coords)
    floor = d if line.is_perfect else 0
    yield from _top_down_walk(caps, min(b, caps[0]), floor)


@lru_cache(maxsize=256)
def _line_vector_table(caps: tuple[int, ...], hi: int, floor: int
                       ) -> tuple[tuple[int, ...], ...]:
    return tuple(_top_down_walk(caps, hi, floor))


def line_vector_list(line: ProductLineSpec, b: int, d: int
                     ) -> tuple[tuple[int, ...], ...]:
    """Materialized ``enumerate_line_vectors`` output, cached.

    The nested combiner indexes into these tables repeatedly; rework lines
    share one table across all demands since their floor is always zero.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    if not 1 <= d <= b:
        raise ValueError("d must satisfy 1 <= d <= b")
    caps = tuple(c.cap for c in line.coords)
    floor = d if line.is_perfect else 0
    return _line_vector_table(caps, min(b, caps[0]), floor)


@dataclass(frozen=True)
class IndexTuple:
    """One cell of the nested index space.

    ``global_index`` is the row-major rank of ``z`` (last line fastest):
    ``((z_1 * m_2 + z_2) * m_3 + z_3) ...``
    """

    z: tuple[int, ...]
    global_index: int


def nested_tuples(counts: Sequence[int]) -> Iterator[IndexTuple]:
    """Yield every index tuple over per-line vector counts, in rank order.

    Emits exactly prod(counts) tuples starting at all-zeros; the global
    index increases by one per step.
    """
    counts = list(counts)
    if any(m < 1 for m in counts):
        raise ValueError("all per-line counts must be >= 1")
    phi = len(counts)
    z = [0] * phi
    rank = 0
    yield IndexTuple(z=tuple(z), global_index=rank)
    i = phi - 1
    while i >= 0:
        if z[i] < counts[i] - 1:
            z[i] += 1
            for j in range(i + 1, phi):
                z[j] = 0
            rank += 1
            yield IndexTuple(z=tuple(z), global_index=rank)
            i = phi - 1
        else:
            i -= 1
