"""Redundancy filtering of overlapping communities."""
from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .expansion import Community

DEFAULT_BETA = 0.5


def jaccard(a: set[int], b: set[int]) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 1.0


def is_redundant(c1: Community, c2: Community, beta: float = DEFAULT_BETA) -> bool:
    """True if ``c1`` is no fitter than ``c2`` and overlaps it by at least ``beta``."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    return c1.fitness <= c2.fitness and jaccard(c1.members, c2.members) >= beta


def select_diverse(communities: Sequence[Community], beta: float = DEFAULT_BETA) -> list[Community]:
    """Keep communities in descending fitness unless redundant to one already kept.

    Equal fitness is ordered by larger size first, then smallest member.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    order = sorted(communities, key=lambda c: (-c.fitness, -len(c), min(c.members, default=-1)))
    kept: list[Community] = []
    # node -> indices of kept communities containing it; with beta > 0 only
    # overlapping communities can make a candidate redundant
    holders: dict[int, list[int]] = defaultdict(list)
    for c in order:
        if beta == 0.0 or not c.members:
            redundant = any(is_redundant(c, k, beta) for k in kept)
        else:
            shared = {i for v in c.members for i in holders.get(v, ())}
            redundant = any(
                c.fitness <= kept[i].fitness and jaccard(c.members, kept[i].members) >= beta
                for i in shared
            )
        if not redundant:
            for v in c.members:
                holders[v].append(len(kept))
            kept.append(c)
    return kept
