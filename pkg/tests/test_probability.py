import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reworknet import (
    binomial_survival,
    line_probability,
    node_state_probability,
    solution_probability,
)

from benchdata import TEST1_B5_D3_SOLUTIONS, TEST1_B5_D3_TOTAL


def test_binomial_survival_reference_values():
    assert binomial_survival(5, 3, 0.9) == pytest.approx(0.0729, rel=1e-12)
    assert binomial_survival(2, 0, 0.95) == pytest.approx(0.0025, rel=1e-12)
    assert binomial_survival(5, 5, 0.99) == pytest.approx(0.9509900499, rel=1e-12)
    assert binomial_survival(0, 0, 0.7) == 1.0


def test_binomial_survival_rejects_cur_above_prev():
    with pytest.raises(ValueError):
        binomial_survival(2, 3, 0.5)


def test_binomial_survival_rate_endpoints():
    for prev in range(0, 6):
        assert binomial_survival(prev, prev, 1.0) == 1.0
        for cur in range(prev):
            assert binomial_survival(prev, cur, 1.0) == 0.0
        assert binomial_survival(prev, 0, 0.0) == 1.0
    assert not math.isnan(binomial_survival(4, 0, 0.0))
    assert not math.isnan(binomial_survival(4, 4, 1.0))


@pytest.mark.parametrize("rate", [i / 10 for i in range(11)])
@pytest.mark.parametrize("prev", list(range(0, 31, 5)) + [1, 2, 3])
def test_binomial_normalization(prev, rate):
    total = math.fsum(binomial_survival(prev, cur, rate) for cur in range(prev + 1))
    assert total == pytest.approx(1.0, abs=1e-12)


@given(st.integers(min_value=0, max_value=40),
       st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_binomial_normalization_random_rates(prev, rate):
    total = math.fsum(binomial_survival(prev, cur, rate) for cur in range(prev + 1))
    assert abs(total - 1.0) <= 1e-11


def test_line_probability_perfect(test1):
    p = line_probability(test1.lines[0], (5, 3), 5)
    assert p == pytest.approx(0.9509900499 * 0.0729 * 0.512, rel=1e-12)


def test_line_probability_rework(test1):
    assert line_probability(test1.lines[1], (2, 0, 0), 5) == pytest.approx(0.0025, rel=1e-12)
    assert line_probability(test1.lines[1], (1, 1, 1), 5) == pytest.approx(0.5985, rel=1e-12)


def test_node_state_probability(test1):
    assert node_state_probability(test1, 1, 5) == 0.05
    assert node_state_probability(test1, 2, 3) == 0.012
    with pytest.raises(ValueError, match="exceeds"):
        node_state_probability(test1, 2, 6)
    with pytest.raises(ValueError, match="no node"):
        node_state_probability(test1, 9, 0)


def test_solution_probability_reference_rows(test1, test2):
    p = solution_probability(test1, (5, 3, 2, 0, 0), 5)
    assert p == pytest.approx(3.9932e-6, rel=1e-4)
    p = solution_probability(test1, (4, 3, 1, 1, 1), 5)
    assert p == pytest.approx(0.00019312771114752183, rel=1e-5)
    p = solution_probability(test2, (1, 1, 0, 0, 0), 1)
    assert p == pytest.approx(0.99 ** 3 * 0.01, rel=1e-12)
    p = solution_probability(test2, (2, 2, 0, 0, 0), 2)
    assert p == pytest.approx(0.99 ** 6 * 0.01, rel=1e-12)


def test_full_solution_table(test1):
    total = []
    for _, _, x, want in TEST1_B5_D3_SOLUTIONS:
        p = solution_probability(test1, x, 5)
        assert p == pytest.approx(want, rel=1e-5)
        total.append(p)
    assert math.fsum(total) == pytest.approx(TEST1_B5_D3_TOTAL, rel=1e-6)


def test_probabilities_stay_in_unit_interval(test1, test5):
    import itertools

    from reworknet import feasible, line_vector_list

    for net, b in ((test1, 5), (test5, 2)):
        tables = [line_vector_list(ln, b, 1) for ln in net.lines]
        for per_line in itertools.product(*tables):
            x = tuple(v for vec in per_line for v in vec)
            if feasible(net, x, b, 1):
                assert 0.0 <= solution_probability(net, x, b) <= 1.0
