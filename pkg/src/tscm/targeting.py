"""Target-subspace mining from sample nodes, plus the multi-sample and ego variants.

Each sample node is expanded with the communities of its neighborhood
network; every ``community + sample`` set yields a candidate subspace, and the
candidates of different samples that agree best (cosine similarity) decide
which neighbors join the final exemplar set.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence, TypeVar

import numpy as np

from .expansion import Community, adjust_community
from .lpa import detect_nei_community
from .metrics import Subspace, subspace_cosine
from .netio import AttributedNetwork
from .seeding import reweight
from .subspace import SubspaceError, compute_subspace

log = logging.getLogger(__name__)

# ties in cosine similarity closer than this go to the lexicographic order
SS_TIE_TOL = 1e-12

T = TypeVar("T")
R = TypeVar("R")


class TargetingError(ValueError):
    pass


def derive_seed(master: int, *keys: int) -> int:
    """Deterministic sub-seed for one stage / item of a seeded run."""
    return int(np.random.SeedSequence([int(master) & 0xFFFFFFFFFFFFFFFF, *keys]).generate_state(1)[0])


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """``map`` that keeps input order; runs on a thread pool if ``threads > 1``."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class CandidateSubspace:
    owner: int
    exemplars: tuple[int, ...]  # sorted, contains owner
    subspace: Subspace
    degenerate: bool = False


class TargetSubspace(NamedTuple):
    subspace: Subspace
    exemplars: list[int]


def _subspace_or_uniform(net: AttributedNetwork, nodes: Iterable[int], seed: int) -> tuple[Subspace, bool]:
    """``compute_subspace`` with a uniform fallback when it cannot separate anything.

    The second value flags the fallback (no separating attribute, or no room
    to sample random pairs outside ``nodes``).
    """
    nodes = list(nodes)
    try:
        l = compute_subspace(net, nodes, seed)
    except SubspaceError as exc:
        if len(set(nodes)) < 2:
            raise
        log.warning("subspace of %d exemplars falls back to uniform: %s", len(nodes), exc)
        return Subspace.uniform(net.r), True
    return l, bool(np.array_equal(l.weights, Subspace.uniform(net.r).weights))


def _check_sample(net: AttributedNetwork, v: int) -> None:
    if not 0 <= v < net.n:
        raise TargetingError(f"sample node {v} out of range")
    if net.degree(v) == 0:
        raise TargetingError(f"sample node {net.ids[v]!r} has no neighbors")


def candidate_subspaces(
    net: AttributedNetwork, v: int, rng_seed: int = 0, threads: int = 1
) -> list[CandidateSubspace]:
    """One candidate per neighborhood community of ``v`` (singletons included)."""
    _check_sample(net, v)
    ncs = detect_nei_community(net, v, derive_seed(rng_seed, 1, v))

    def build(item):
        i, nc = item
        ex = tuple(sorted(set(nc) | {v}))
        l, degenerate = _subspace_or_uniform(net, ex, derive_seed(rng_seed, 2, v, i))
        return CandidateSubspace(v, ex, l, degenerate)

    cands = parallel_map(build, list(enumerate(ncs)), threads)
    if all(c.degenerate for c in cands):
        log.warning("every candidate subspace of node %s is degenerate", net.ids[v])
    return cands


def selectable(cands: Sequence[CandidateSubspace]) -> list[CandidateSubspace]:
    """Candidates eligible for the similarity selection.

    Candidates built from a singleton neighborhood community (two exemplar
    nodes, one pair) are dropped whenever the sample has a larger one.
    """
    multi = [c for c in cands if len(c.exemplars) > 2]
    return multi or list(cands)


def similarity_matrix(a: Sequence[CandidateSubspace], b: Sequence[CandidateSubspace]) -> np.ndarray:
    return np.array([[subspace_cosine(x.subspace, y.subspace) for y in b] for x in a]).reshape(len(a), len(b))


def best_pair(a: Sequence[CandidateSubspace], b: Sequence[CandidateSubspace]) -> tuple[int, int]:
    """Indices of the most similar candidate pair; ties go to the
    lexicographically smallest exemplar sets."""
    ss = similarity_matrix(a, b)
    top = ss.max()
    tied = zip(*np.nonzero(ss >= top - SS_TIE_TOL))
    return min(tied, key=lambda ij: (a[ij[0]].exemplars, b[ij[1]].exemplars))


def mine_target_subspace(
    net: AttributedNetwork, s1: int, s2: int, rng_seed: int = 0, threads: int = 1
) -> TargetSubspace:
    if s1 == s2:
        raise TargetingError("duplicate sample node")
    _check_sample(net, s1)
    _check_sample(net, s2)
    c1 = selectable(candidate_subspaces(net, s1, rng_seed, threads))
    c2 = selectable(candidate_subspaces(net, s2, rng_seed, threads))
    i, j = best_pair(c1, c2)
    exemplars = sorted(set(c1[i].exemplars) | set(c2[j].exemplars))
    l, _ = _subspace_or_uniform(net, exemplars, derive_seed(rng_seed, 3))
    return TargetSubspace(l, exemplars)


def mine_target_subspace_multi(
    net: AttributedNetwork, samples: Sequence[int], rng_seed: int = 0, threads: int = 1
) -> TargetSubspace:
    """Variant for three or more samples.

    Two seeded-random prototype samples fix a pair of prototype subspaces;
    every other sample contributes the candidate with the largest summed
    similarity to both prototypes.
    """
    samples = [int(s) for s in samples]
    if len(set(samples)) != len(samples):
        raise TargetingError("duplicate sample node")
    if len(samples) < 3:
        raise TargetingError("the multi-sample variant needs at least three samples")
    for s in samples:
        _check_sample(net, s)
    cands = {s: selectable(candidate_subspaces(net, s, rng_seed, threads)) for s in samples}
    rng = np.random.default_rng(derive_seed(rng_seed, 4))
    p1, p2 = (samples[k] for k in rng.choice(len(samples), size=2, replace=False))
    i, j = best_pair(cands[p1], cands[p2])
    proto1, proto2 = cands[p1][i], cands[p2][j]
    exemplars = set(proto1.exemplars) | set(proto2.exemplars)
    for s in samples:
        if s in (p1, p2):
            continue
        score = [
            subspace_cosine(c.subspace, proto1.subspace) + subspace_cosine(c.subspace, proto2.subspace)
            for c in cands[s]
        ]
        top = max(score)
        pick = min((c for c, x in zip(cands[s], score) if x >= top - SS_TIE_TOL), key=lambda c: c.exemplars)
        exemplars |= set(pick.exemplars)
    exemplars_sorted = sorted(exemplars)
    l, _ = _subspace_or_uniform(net, exemplars_sorted, derive_seed(rng_seed, 3))
    return TargetSubspace(l, exemplars_sorted)


def ego_analysis(
    net: AttributedNetwork, v: int, rng_seed: int = 0, threads: int = 1
) -> list[tuple[Subspace, Community]]:
    """Subspace and expanded community for every neighborhood community of ``v``."""
    cands = candidate_subspaces(net, v, rng_seed, threads)

    def expand(c: CandidateSubspace) -> tuple[Subspace, Community]:
        W = reweight(net, c.subspace)
        return c.subspace, adjust_community(W, c.exemplars)

    return parallel_map(expand, cands, threads)
