"""End-to-end mining: target subspace, seeds, expansion, redundancy filtering."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

from .diversity import DEFAULT_BETA, select_diverse
from .expansion import Community, adjust_community
from .metrics import Subspace
from .netio import AttributedNetwork
from .seeding import WeightedAdjacency, construct_seed_set
from .targeting import (
    TargetingError,
    derive_seed,
    mine_target_subspace,
    mine_target_subspace_multi,
    parallel_map,
)

log = logging.getLogger(__name__)


@dataclass
class MiningResult:
    subspace: Subspace
    exemplars: list[int]
    communities: list[Community]
    weights: WeightedAdjacency = field(repr=False)
    seeds: list[list[int]] = field(repr=False, default_factory=list)
    meta: dict = field(default_factory=dict)


def tscm(
    net: AttributedNetwork,
    samples: Sequence[int],
    beta: float = DEFAULT_BETA,
    rng_seed: int = 42,
    threads: int = 1,
) -> MiningResult:
    """Mine the target subspace and the diverse target communities.

    ``samples`` holds two sample nodes; three or more switch to the
    multi-sample subspace mining.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    samples = [int(s) for s in samples]
    if len(set(samples)) != len(samples):
        raise TargetingError("duplicate sample node")
    if len(samples) < 2:
        raise TargetingError("at least two sample nodes are required")
    t0 = time.perf_counter()
    if len(samples) == 2:
        l, exemplars = mine_target_subspace(net, samples[0], samples[1], derive_seed(rng_seed, 10), threads)
    else:
        l, exemplars = mine_target_subspace_multi(net, samples, derive_seed(rng_seed, 10), threads)
    t1 = time.perf_counter()
    seeds, W = construct_seed_set(net, l, derive_seed(rng_seed, 11))
    t2 = time.perf_counter()
    if not seeds:
        log.warning("backbone produced no seeds; no communities reported")
    expanded = parallel_map(lambda s: adjust_community(W, s), seeds, threads)
    t3 = time.perf_counter()
    kept = select_diverse(expanded, beta)
    t4 = time.perf_counter()
    timings = {
        "subspace_ms": 1e3 * (t1 - t0),
        "seeding_ms": 1e3 * (t2 - t1),
        "expansion_ms": 1e3 * (t3 - t2),
        "selection_ms": 1e3 * (t4 - t3),
    }
    meta = {
        "seed": rng_seed,
        "beta": beta,
        "n_seeds": len(seeds),
        "n_expanded": len(expanded),
        "n_communities": len(kept),
        "timings": timings,
    }
    return MiningResult(l, list(exemplars), kept, W, seeds, meta)
