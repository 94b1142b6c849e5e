"""Closed-form subspace estimation from a set of exemplar nodes."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

import numpy as np

from .metrics import Subspace
from .netio import AttributedNetwork


class SubspaceError(ValueError):
    pass


@dataclass(frozen=True)
class PairSet:
    """Unordered node pairs; ``role`` is ``"similar"`` or ``"random"``."""

    first: np.ndarray
    second: np.ndarray
    role: str

    def __len__(self) -> int:
        return len(self.first)


def all_pairs(nodes: np.ndarray) -> PairSet:
    i, j = np.triu_indices(len(nodes), k=1)
    return PairSet(nodes[i], nodes[j], "similar")


def sample_random_pairs(pool: np.ndarray, k: int, rng: np.random.Generator) -> PairSet:
    """Draw ``k`` distinct unordered pairs from ``pool`` without replacement.

    Takes every available pair when ``k`` exceeds the number of them.
    """
    size = len(pool)
    total = size * (size - 1) // 2
    if total == 0:
        raise SubspaceError("fewer than two nodes outside the exemplar set")
    if k >= total:
        idx = np.arange(total, dtype=np.int64)
    else:
        idx = rng.choice(total, size=k, replace=False)
    i, j = _unrank_pairs(idx, size)
    return PairSet(pool[i], pool[j], "random")


def _unrank_pairs(idx: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray]:
    # row-major order over i < j; row i starts at i*size - i*(i+1)/2
    idx = np.asarray(idx, dtype=np.int64)

    def start(i):
        return i * size - i * (i + 1) // 2

    b = 2 * size - 1
    i = np.floor((b - np.sqrt(b * b - 8.0 * idx)) / 2).astype(np.int64)
    # one-step correction for float rounding in the sqrt
    i -= idx < start(i)
    i += idx >= start(i + 1)
    return i, idx - start(i) + i + 1


def mean_square_diff(net: AttributedNetwork, pairs: PairSet) -> np.ndarray:
    """Per-attribute mean squared value difference over ``pairs``."""
    d = net.pair_diffs(pairs.first, pairs.second)
    return (d * d).mean(axis=0)


def subspace_from_pairs(h_similar: np.ndarray, h_random: np.ndarray, n_similar: int) -> Subspace:
    raw = np.where(h_similar < h_random, h_random / (h_similar + 1.0 / n_similar), 0.0)
    if raw.sum() <= 0:
        return Subspace.uniform(len(raw))
    return Subspace.normalized(raw)


def compute_subspace(
    net: AttributedNetwork,
    exemplars: Collection[int],
    rng_seed: int | np.random.Generator = 0,
) -> Subspace:
    """Subspace under which the exemplar nodes look alike.

    Compares the average squared difference of every attribute over all
    exemplar pairs with that over ``r * #pairs`` random pairs drawn outside
    the exemplar set. Attributes that do not separate the two get weight 0;
    the rest are weighted by ``h_random / (h_similar + 1/#pairs)`` and the
    vector is normalized. Falls back to uniform weights if nothing separates.
    """
    t_nodes = np.array(sorted(set(int(v) for v in exemplars)), dtype=np.int64)
    if len(t_nodes) < 2:
        raise SubspaceError("need at least two exemplar nodes")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    mask = np.ones(net.n, dtype=bool)
    mask[t_nodes] = False
    pool = np.flatnonzero(mask)
    similar = all_pairs(t_nodes)
    random = sample_random_pairs(pool, net.r * len(similar), rng)
    return subspace_from_pairs(
        mean_square_diff(net, similar), mean_square_diff(net, random), len(similar)
    )
