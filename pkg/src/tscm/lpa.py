"""Asynchronous label propagation and neighborhood-community detection."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .netio import AttributedNetwork

MAX_ITER = 100


@dataclass(frozen=True)
class Partition:
    """Community label per node; ``communities`` lists the members, sorted."""

    labels: dict[int, int]

    @property
    def communities(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for node in sorted(self.labels):
            groups.setdefault(self.labels[node], []).append(node)
        return sorted(groups.values(), key=lambda c: c[0])

    def __len__(self) -> int:
        return len(set(self.labels.values()))


def lpa(
    nodes: Iterable[int],
    edges: Iterable[tuple[int, int]],
    rng_seed: int = 0,
    max_iter: int = MAX_ITER,
) -> Partition:
    """Classic asynchronous label propagation on the subgraph ``(nodes, edges)``.

    Every node starts with its own index as label. Each sweep visits the nodes
    in a freshly shuffled order and lets each adopt the most frequent label
    among its neighbors, ties going to the smallest label. Stops after a sweep
    without changes or after ``max_iter`` sweeps.
    """
    node_list = sorted(set(int(v) for v in nodes))
    local = {v: i for i, v in enumerate(node_list)}
    adj: list[list[int]] = [[] for _ in node_list]
    for a, b in edges:
        ia, ib = local[int(a)], local[int(b)]
        if ia != ib:
            adj[ia].append(ib)
            adj[ib].append(ia)
    labels = list(node_list)
    rng = np.random.default_rng(rng_seed)
    active = np.array([i for i, nb in enumerate(adj) if nb], dtype=np.int64)
    for _ in range(max_iter):
        changed = False
        for i in rng.permutation(active).tolist():
            new = _majority(labels, adj[i])
            if new != labels[i]:
                labels[i] = new
                changed = True
        if not changed:
            break
    return Partition(dict(zip(node_list, labels)))


def _majority(labels: Sequence[int], neighbors: Sequence[int]) -> int:
    counts: dict[int, int] = {}
    for j in neighbors:
        lab = labels[j]
        counts[lab] = counts.get(lab, 0) + 1
    best = max(counts.values())
    return min(lab for lab, c in counts.items() if c == best)


def is_fixed_point(partition: Partition, edges: Iterable[tuple[int, int]]) -> bool:
    """True if no node would change label in one more sweep (order-free check)."""
    labels = partition.labels
    nbrs: dict[int, list[int]] = {v: [] for v in labels}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for v, nb in nbrs.items():
        if nb and _majority(labels, nb) != labels[v]:
            return False
    return True


def neighborhood_network(net: AttributedNetwork, v: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Neighbors of ``v`` and the edges among them (``v`` itself excluded)."""
    nb = net.neighbors(v)
    members = set(nb.tolist())
    edges = []
    for u in nb.tolist():
        for w in net.neighbors(u).tolist():
            if u < w and w in members:
                edges.append((u, w))
    return nb.tolist(), edges


def detect_nei_community(net: AttributedNetwork, v: int, rng_seed: int = 0) -> list[list[int]]:
    """Communities of the neighborhood network of ``v``, singletons included."""
    nodes, edges = neighborhood_network(net, v)
    if not nodes:
        return []
    return lpa(nodes, edges, rng_seed).communities
