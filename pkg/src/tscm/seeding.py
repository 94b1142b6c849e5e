"""Subspace re-weighting of the network and backbone-based seed construction."""
from __future__ import annotations

import numpy as np

from .lpa import lpa
from .metrics import Subspace, pair_similarities
from .netio import AttributedNetwork


class SeedingError(ValueError):
    pass


class WeightedAdjacency:
    """Edge weights of ``net`` under a subspace, indexed like ``net.edges``.

    ``csr_weights`` is aligned with ``net.indices`` and ``strength`` holds
    each node's weighted degree.
    """

    def __init__(self, net: AttributedNetwork, weights: np.ndarray):
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (net.m,):
            raise ValueError("one weight per edge required")
        self.net = net
        self.weights = weights
        self.csr_weights = weights[net.csr_edge]
        e = net.edges
        self.strength = np.bincount(e[:, 0], weights, net.n) + np.bincount(e[:, 1], weights, net.n)
        self.max = float(weights.max()) if net.m else 0.0
        self.mean = float(weights.mean()) if net.m else 0.0
        for a in (self.weights, self.csr_weights, self.strength):
            a.flags.writeable = False

    @property
    def n(self) -> int:
        return self.net.n

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.net.indptr[v], self.net.indptr[v + 1]
        return self.net.indices[lo:hi], self.csr_weights[lo:hi]

    def weight(self, v: int, u: int) -> float:
        nb, w = self.neighbors(v)
        i = np.searchsorted(nb, u)
        return float(w[i]) if i < len(nb) and nb[i] == u else 0.0


def reweight(net: AttributedNetwork, l: Subspace) -> WeightedAdjacency:
    """Weight every edge by the exponential-kernel similarity of its endpoints."""
    e = net.edges
    return WeightedAdjacency(net, pair_similarities(net, l, e[:, 0], e[:, 1]))


def backbone_threshold(W: WeightedAdjacency) -> float:
    return 0.5 * (W.max + W.mean)


def backbone(W: WeightedAdjacency) -> np.ndarray:
    """Edges (rows of ``net.edges``) whose weight reaches the backbone threshold."""
    return W.net.edges[W.weights >= backbone_threshold(W)]


def construct_seed_set(
    net: AttributedNetwork, l: Subspace, rng_seed: int = 0
) -> tuple[list[list[int]], WeightedAdjacency]:
    """Seeds = label-propagation communities of the high-weight backbone.

    Nodes with no backbone edge get no seed.
    """
    if net.m == 0:
        raise SeedingError("network has no edges")
    W = reweight(net, l)
    bb = backbone(W)
    nodes = np.unique(bb)
    seeds = lpa(nodes.tolist(), bb.tolist(), rng_seed).communities
    return seeds, W
