import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tscm.benchgen import BenchmarkConfig, generate
from tscm.diversity import is_redundant
from tscm.metrics import Subspace
from tscm.pipeline import tscm
from tscm.targeting import TargetingError

from conftest import clique, make_net


def test_homogeneous_clique():
    net = make_net(6, clique(range(6)), np.full((6, 3), 0.4))
    for beta in (0.0, 0.5, 1.0):
        res = tscm(net, [0, 1], beta)
        assert res.subspace == Subspace.uniform(3)
        assert [c.members for c in res.communities] == [set(range(6))]


def test_same_sample():
    net = make_net(6, clique(range(6)), np.full((6, 3), 0.4))
    with pytest.raises(TargetingError):
        tscm(net, [2, 2])
    with pytest.raises(TargetingError):
        tscm(net, [2])


def test_bad_beta():
    net = make_net(3, clique(range(3)), np.zeros((3, 1)))
    with pytest.raises(ValueError):
        tscm(net, [0, 1], beta=2.0)


def test_toy_recovers_colleagues(toy):
    res = tscm(toy, [toy.node("5"), toy.node("10")])
    found = [sorted(int(toy.ids[v]) for v in c.members) for c in res.communities]
    assert [5, 6, 7, 8, 9, 10] in found
    assert sorted(int(toy.ids[v]) for v in res.exemplars) == [5, 6, 7, 8, 9, 10]


@pytest.fixture(scope="module")
def bench():
    return generate(BenchmarkConfig(n=600, c_min=20, c_max=40, b=3, rng_seed=8))


def test_result_shape(bench):
    s = bench.targets[0][:2]
    res = tscm(bench.network, s, rng_seed=1)
    assert res.meta["n_seeds"] == len(res.seeds)
    assert set(res.meta["timings"]) == {"subspace_ms", "seeding_ms", "expansion_ms", "selection_ms"}
    for i, a in enumerate(res.communities):
        for b in res.communities[i + 1:]:
            assert not is_redundant(b, a, 0.5)
    fits = [c.fitness for c in res.communities]
    assert fits == sorted(fits, reverse=True)


def test_deterministic_and_thread_independent(bench):
    s = bench.targets[1][:2]
    a = tscm(bench.network, s, rng_seed=5, threads=1)
    b = tscm(bench.network, s, rng_seed=5, threads=4)
    assert a.subspace == b.subspace
    assert [c.members for c in a.communities] == [c.members for c in b.communities]


def test_multi_sample_runs(bench):
    res = tscm(bench.network, bench.targets[0][:4], rng_seed=2)
    assert set(bench.targets[0][:4]) <= set(res.exemplars)
    assert res.communities


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(6, 30))
def test_random_graph_invariants(seed, n):
    rng = np.random.default_rng(seed)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.3]
    net = make_net(n, edges, rng.random((n, 4)))
    deg = net.degrees()
    cand = np.flatnonzero(deg > 0)
    if len(cand) < 2:
        return
    s = rng.choice(cand, size=2, replace=False).tolist()
    res = tscm(net, s, 0.5, seed)
    assert abs(res.subspace.weights.sum() - 1) <= 1e-12
    assert set(s) <= set(res.exemplars)
    for c in res.communities:
        assert c.members and 0 <= c.fitness <= 1 + 1e-12
    for i, a in enumerate(res.communities):
        for b in res.communities[i + 1:]:
            assert not is_redundant(b, a, 0.5)
