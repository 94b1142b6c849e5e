import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tscm.expansion import (
    ActionCapExceeded,
    Community,
    FitnessError,
    adjust_community,
    delta_fitness,
    subspace_fitness,
)
from tscm.metrics import Subspace
from tscm.seeding import WeightedAdjacency, reweight

import oracles
from conftest import clique, make_net


def unit(n, edges):
    net = make_net(n, edges, np.zeros((n, 1)))
    return WeightedAdjacency(net, np.ones(net.m))


def weighted(n, edges, w):
    net = make_net(n, edges, np.zeros((n, 1)))
    # make_net canonicalizes edges; map the given weights onto that order
    lookup = {tuple(sorted(e)): x for e, x in zip(edges, w)}
    return WeightedAdjacency(net, np.array([lookup[tuple(e)] for e in net.edges.tolist()]))


def dense(W):
    A = np.zeros((W.n, W.n))
    for (u, v), x in zip(W.net.edges.tolist(), W.weights):
        A[u, v] = A[v, u] = x
    return A


def test_whole_component_fitness_one():
    W = unit(4, clique(range(4)))
    assert subspace_fitness(W, range(4)) == 1.0


def test_single_node_fitness_zero():
    W = unit(3, [(0, 1), (1, 2)])
    assert subspace_fitness(W, [1]) == 0.0


def test_path_fitness():
    W = unit(3, [(0, 1), (1, 2)])
    c = Community.from_members(W, [0, 1])
    assert (c.invol, c.vol) == (2.0, 3.0)
    assert c.fitness == pytest.approx(2 / 3, abs=1e-12)


def test_fitness_errors():
    W = unit(3, [(0, 1)])
    with pytest.raises(FitnessError):
        subspace_fitness(W, [])
    with pytest.raises(FitnessError):
        subspace_fitness(W, [2])


def test_tiny_link_add_is_negative():
    eps = 1e-6
    W = weighted(4, [(0, 1), (1, 2), (2, 3)], [1.0, eps, 1.0])
    C = Community.from_members(W, [0, 1])
    d = delta_fitness(W, C, "add", 2)
    assert d < 0
    # numerator fixed up to 2*eps while the denominator grows by deg_w(2)
    s = W.strength[2]
    assert d == pytest.approx(-C.fitness * s / (C.vol + s), abs=4 * eps)


def test_delta_preconditions():
    W = unit(4, [(0, 1), (1, 2)])
    C = Community.from_members(W, [0, 1])
    with pytest.raises(ValueError):
        delta_fitness(W, C, "add", 1)
    with pytest.raises(ValueError):
        delta_fitness(W, C, "add", 3)
    with pytest.raises(ValueError):
        delta_fitness(W, C, "remove", 2)
    with pytest.raises(ValueError):
        delta_fitness(W, C, "swap", 2)
    with pytest.raises(ValueError):
        delta_fitness(W, Community.from_members(W, [1]), "remove", 1)


def random_W(seed, n, p=0.3):
    rng = np.random.default_rng(seed)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    net = make_net(n, edges, rng.random((n, 3)))
    return reweight(net, Subspace.normalized(rng.random(3) + 1e-3))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 100_000), n=st.integers(3, 20))
def test_delta_matches_recompute_and_reverses(seed, n):
    W = random_W(seed, n)
    if W.net.m == 0:
        return
    rng = np.random.default_rng(seed)
    start = int(rng.choice(np.unique(W.net.edges)))
    C = Community.from_members(W, {start, *W.net.neighbors(start)[:2].tolist()})
    A = dense(W)
    for v in range(n):
        if v in C.members:
            if len(C.members) > 1 and W.strength[sorted(C.members - {v})].sum() > 0:
                d = delta_fitness(W, C, "remove", v)
                assert d == pytest.approx(oracles.fitness(A, C.members - {v}) - oracles.fitness(A, C.members), abs=1e-9)
        elif any(A[v, u] > 0 for u in C.members):
            d = delta_fitness(W, C, "add", v)
            assert d == pytest.approx(oracles.fitness(A, C.members | {v}) - oracles.fitness(A, C.members), abs=1e-9)
            grown = Community.from_members(W, C.members | {v})
            assert delta_fitness(W, grown, "remove", v) == pytest.approx(-d, abs=1e-9)


def test_connected_component_unchanged():
    W = unit(5, clique(range(5)))
    C = adjust_community(W, range(5))
    assert C.members == set(range(5))
    assert C.history == [1.0]


def test_clique_with_pendant():
    edges = clique(range(4)) + [(3, 4)]
    W = unit(5, edges)
    C = adjust_community(W, [0, 1])
    A = dense(W)
    # the pendant closes the graph, whose fitness (1.0) beats the clique's 12/13
    assert oracles.fitness(A, {0, 1, 2, 3}) == pytest.approx(12 / 13)
    best = max(oracles.fitness(A, set(s)) for s in oracles.subsets(range(5)) if {0, 1} <= set(s))
    trace = oracles.hill_climb_trace(A, {0, 1})
    assert [sorted(t) for t in trace] == [[0, 1], [0, 1, 2], [0, 1, 2, 3], [0, 1, 2, 3, 4]]
    assert C.members == set(trace[-1])
    assert C.fitness == pytest.approx(best, abs=1e-12)
    assert oracles.all_local_optimum(A, C.members)


def test_outlier_removed_first():
    eps = 1e-4
    # node 4 hangs off the clique by a tiny edge and belongs to a second clique
    edges = clique(range(4)) + [(3, 4)] + clique(range(4, 8))
    w = [1.0] * 6 + [eps] + [1.0] * 6
    W = weighted(8, edges, w)
    A = dense(W)
    seed = {0, 1, 2, 3, 4}
    C0 = Community.from_members(W, seed)
    assert delta_fitness(W, C0, "remove", 4) > 0
    assert oracles.fitness(A, seed - {4}) > oracles.fitness(A, seed)
    trace = oracles.hill_climb_trace(A, seed)
    assert trace[1] == frozenset(seed - {4})
    C = adjust_community(W, seed)
    assert C.members == {0, 1, 2, 3}


def test_empty_seed():
    W = unit(3, [(0, 1)])
    with pytest.raises(FitnessError):
        adjust_community(W, [])
    with pytest.raises(FitnessError):
        adjust_community(W, [2])


def test_action_cap():
    W = unit(6, [(k, k + 1) for k in range(5)])
    with pytest.raises(ActionCapExceeded):
        adjust_community(W, [0], max_actions=1)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 100_000), n=st.integers(3, 12))
def test_matches_reference_trace(seed, n):
    W = random_W(seed, n, p=0.4)
    if W.net.m == 0:
        return
    rng = np.random.default_rng(seed)
    v = int(rng.choice(np.unique(W.net.edges)))
    seed_set = {v, int(W.net.neighbors(v)[0])}
    C = adjust_community(W, seed_set)
    A = dense(W)
    trace = oracles.hill_climb_trace(A, seed_set)
    assert trace[-1] == frozenset(C.members)
    assert np.allclose(C.history, [oracles.fitness(A, s) for s in trace], atol=1e-9, rtol=0)
    assert all(b > a for a, b in zip(C.history, C.history[1:]))
    assert oracles.all_local_optimum(A, C.members)
