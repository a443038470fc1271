import pytest

from reworknet import (
    CoordinateSpec,
    Network,
    NodeSpec,
    ProductLineSpec,
    RandomNetworkParams,
    StateDistribution,
    oracle_solve,
    random_small_network,
    serialize_network,
    solve,
    validate_network,
)


def _agree(net, b, d):
    ours = solve(net, b, d)
    ref = oracle_solve(net, b, d)
    assert ours.feasible_count == ref.feasible_count, (net.name, b, d)
    if ref.reliability == 0.0:
        assert ours.reliability == 0.0
    else:
        rel = abs(ours.reliability - ref.reliability) / abs(ref.reliability)
        assert rel <= 1e-12, (net.name, b, d, rel)


def test_oracle_demo_instance(test1):
    rep = oracle_solve(test1, 5, 3)
    assert rep.feasible_count == 16
    assert rep.reliability == pytest.approx(0.0092850973, rel=1e-6)
    assert rep.total_tuples == 6 ** 5


def test_oracle_test2_row(test2):
    rep = oracle_solve(test2, 2, 1)
    assert rep.feasible_count == 5
    assert rep.reliability == pytest.approx(9.80482e-3, rel=1e-5)


def test_oracle_all_perfect_degenerate_case():
    net = Network(
        name="degenerate",
        lines=(ProductLineSpec("perfect", (CoordinateSpec(1, 1.0),), entry_rate=1.0),),
        nodes=(NodeSpec(1, StateDistribution(probs=(0.0, 1.0)), ((1, 1),)),),
        splits=(),
    )
    rep = oracle_solve(net, 1, 1)
    assert rep.feasible_count == 1
    assert rep.reliability == 1.0
    _agree(net, 1, 1)


def test_oracle_box_guard(test5):
    with pytest.raises(ValueError, match="above the limit"):
        oracle_solve(test5, 9, 1)


def test_oracle_rejects_bad_bd(test1):
    with pytest.raises(ValueError):
        oracle_solve(test1, 3, 5)


def test_random_network_deterministic():
    p = RandomNetworkParams(seed=1)
    a = random_small_network(p)
    b = random_small_network(p)
    assert a == b
    assert serialize_network(a) == serialize_network(b)


def test_random_networks_mostly_distinct():
    nets = [random_small_network(RandomNetworkParams(seed=s)) for s in range(100)]
    docs = {str(serialize_network(n)) for n in nets}
    assert len(docs) >= 99


@pytest.mark.parametrize("seed", range(50))
def test_random_networks_validate_clean(seed):
    net = random_small_network(RandomNetworkParams(seed=seed))
    assert validate_network(net) == []


@pytest.mark.parametrize("seed", range(40))
def test_engine_matches_oracle_on_random_networks(seed):
    net = random_small_network(RandomNetworkParams(seed=seed))
    for b in (1, 2, 3):
        for d in range(1, b + 1):
            _agree(net, b, d)


def test_engine_matches_oracle_on_benchmarks(test1, test2):
    for net in (test1, test2):
        for b in (1, 2, 3, 4):
            for d in range(1, b + 1):
                _agree(net, b, d)
