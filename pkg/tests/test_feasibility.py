import itertools

import pytest

from reworknet import (
    check_chain,
    check_node_loads,
    check_output,
    check_split,
    feasible,
    is_feasible,
    line_vector_list,
)

from benchdata import TEST1_B5_D3_SOLUTIONS


def test_chain(test1, test3):
    assert check_chain(test1, (5, 3, 2, 0, 0))
    assert not check_chain(test1, (3, 4, 0, 0, 0))
    assert check_chain(test3, (2, 2, 1, 1, 1, 1, 1, 1))
    assert not check_chain(test1, (6, 3, 0, 0, 0))  # first above its cap


def test_chain_dimension_mismatch(test1):
    with pytest.raises(ValueError, match="coordinates"):
        check_chain(test1, (1, 1, 1))


def test_split(test1, test5):
    assert check_split(test1, (5, 3, 2, 0, 0))
    assert not check_split(test1, (5, 4, 2, 0, 0))
    x5 = [0] * 15
    x5[4], x5[5], x5[12] = 2, 1, 2  # x_5=2, x_6=1, x_13=2: 1 + 2 > 2
    assert not check_split(test5, tuple(x5))


def test_node_loads(test1):
    assert not check_node_loads(test1, (5, 5, 5, 5, 5), 5, 3)
    assert check_node_loads(test1, (3, 3, 0, 0, 0), 5, 3)
    assert not check_node_loads(test1, (5, 3, 1, 1, 1), 5, 3)  # x_1 + x_4 = 6 > 5


def test_output(test1):
    assert check_output(test1, (3, 1, 2, 2, 2), 3)
    assert not check_output(test1, (5, 2, 1, 0, 0), 3)
    assert not check_output(test1, (0, 0, 0, 0, 0), 1)


def test_output_excludes_node_satisfying_vector(test1):
    # (5,2,1,0,0) passes chain, split, and node loads at (5,3) but delivers
    # only two output units; without the output check s would exceed 16.
    x = (5, 2, 1, 0, 0)
    assert check_chain(test1, x)
    assert check_split(test1, x)
    assert check_node_loads(test1, x, 5, 3)
    assert not feasible(test1, x, 5, 3)


def test_is_feasible_report(test1):
    rep = is_feasible(test1, (5, 3, 2, 0, 0), 5, 3)
    assert rep.feasible and rep.first_violation is None
    rep = is_feasible(test1, (5, 5, 5, 5, 5), 5, 3)
    assert not rep.feasible and not rep.node_ok
    assert "node" in rep.first_violation


def test_is_feasible_test2_example(test2):
    rep = is_feasible(test2, (1, 0, 1, 1, 1), 2, 1)
    assert rep.feasible


def _assembled_space(net, b, d):
    tables = [line_vector_list(ln, b, d) for ln in net.lines]
    for per_line in itertools.product(*tables):
        yield tuple(v for vec in per_line for v in vec)


def test_table_rows_feasible_set(test1):
    expected = {x for _, _, x, _ in TEST1_B5_D3_SOLUTIONS}
    got = {x for x in _assembled_space(test1, 5, 3) if feasible(test1, x, 5, 3)}
    assert got == expected


def test_feasible_global_indices(test1):
    want = [i for i, _, _, _ in TEST1_B5_D3_SOLUTIONS]
    got = [i for i, x in enumerate(_assembled_space(test1, 5, 3))
           if feasible(test1, x, 5, 3)]
    assert got == want


def test_test2_b2_d1_feasible_set(test2):
    expected = {(2, 2, 0, 0, 0), (2, 1, 1, 0, 0), (2, 1, 0, 0, 0),
                (1, 1, 0, 0, 0), (1, 0, 1, 1, 1)}
    got = {x for x in _assembled_space(test2, 2, 1) if feasible(test2, x, 2, 1)}
    assert got == expected


def test_chain_redundant_on_assembled_vectors(test1):
    # the line walk already guarantees the chain, so it never discriminates
    for x in _assembled_space(test1, 5, 3):
        assert check_chain(test1, x)


def test_monotone_in_demand(test1):
    for x in _assembled_space(test1, 5, 1):
        for d in (1, 2, 3, 4):
            if feasible(test1, x, 5, d + 1):
                assert feasible(test1, x, 5, d)
