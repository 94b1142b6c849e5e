"""Subspace fitness and greedy hill-climbing adjustment of a community."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Iterable

import numpy as np

from .seeding import WeightedAdjacency

# two actions whose gains differ by less than this count as tied
TIE_TOL = 1e-12
# gains at or below this are treated as no improvement (float noise)
GAIN_TOL = 1e-12


class FitnessError(ValueError):
    pass


class ActionCapExceeded(RuntimeError):
    pass


def subspace_fitness(W: WeightedAdjacency, members: Collection[int]) -> float:
    """Internal weighted degree over total weighted degree of ``members``.

    Both sums count each internal edge twice, matching a symmetric matrix.
    """
    members = np.fromiter((int(v) for v in members), dtype=np.int64)
    if len(members) == 0:
        raise FitnessError("empty community")
    vol = float(W.strength[members].sum())
    if vol <= 0:
        raise FitnessError("community has no incident edges; fitness undefined")
    mask = np.zeros(W.n, dtype=bool)
    mask[members] = True
    e = W.net.edges
    inside = mask[e[:, 0]] & mask[e[:, 1]]
    return 2.0 * float(W.weights[inside].sum()) / vol


@dataclass
class Community:
    """Member set plus cached internal (``invol``) and total (``vol``) volume."""

    members: set[int]
    invol: float
    vol: float
    history: list[float] = field(default_factory=list, repr=False, compare=False)

    @property
    def fitness(self) -> float:
        return self.invol / self.vol

    @classmethod
    def from_members(cls, W: WeightedAdjacency, members: Iterable[int]) -> "Community":
        members = {int(v) for v in members}
        if not members:
            raise FitnessError("empty community")
        arr = np.fromiter(members, dtype=np.int64)
        vol = float(W.strength[arr].sum())
        if vol <= 0:
            raise FitnessError("community has no incident edges; fitness undefined")
        return cls(members, subspace_fitness(W, members) * vol, vol)

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def _links_into(W: WeightedAdjacency, v: int, members: Collection[int]) -> float:
    nb, w = W.neighbors(v)
    return float(sum(wi for u, wi in zip(nb.tolist(), w.tolist()) if u in members))


def delta_fitness(W: WeightedAdjacency, C: Community, action: str, v: int) -> float:
    """Fitness change of ``action`` (``"add"`` or ``"remove"``) applied to ``v``."""
    k = _links_into(W, v, C.members)
    s = float(W.strength[v])
    if action == "add":
        if v in C.members:
            raise ValueError(f"node {v} already in community")
        if k <= 0 and not any(u in C.members for u in W.neighbors(v)[0].tolist()):
            raise ValueError(f"node {v} is not adjacent to the community")
        return (C.invol + 2 * k) / (C.vol + s) - C.fitness
    if action == "remove":
        if v not in C.members:
            raise ValueError(f"node {v} not in community")
        if len(C.members) == 1:
            raise ValueError("cannot remove the last member")
        rest = C.vol - s
        if rest <= 0:
            raise ValueError("removal leaves a community without incident edges")
        return (C.invol - 2 * k) / rest - C.fitness
    raise ValueError(f"unknown action {action!r}")


class _State:
    """Incremental bookkeeping for one adjustment run.

    ``links[u]`` is the weighted link mass from ``u`` into the community and
    ``touch[u]`` the number of community neighbors, kept for every node.
    """

    def __init__(self, W: WeightedAdjacency, seed: Iterable[int]):
        self.W = W
        self.inside = np.zeros(W.n, dtype=bool)
        self.links = np.zeros(W.n)
        self.touch = np.zeros(W.n, dtype=np.int64)
        self.members: set[int] = set()
        self.frontier: set[int] = set()
        self.invol = 0.0
        self.vol = 0.0
        for v in sorted({int(v) for v in seed}):
            self._add(v)

    def _add(self, v: int) -> None:
        nb, w = self.W.neighbors(v)
        self.invol += 2 * self.links[v]
        self.vol += self.W.strength[v]
        self.inside[v] = True
        self.members.add(v)
        self.frontier.discard(v)
        self.links[nb] += w
        self.touch[nb] += 1
        for u in nb[~self.inside[nb]].tolist():
            self.frontier.add(u)

    def _remove(self, v: int) -> None:
        nb, w = self.W.neighbors(v)
        self.invol -= 2 * self.links[v]
        self.vol -= self.W.strength[v]
        self.inside[v] = False
        self.members.discard(v)
        self.links[nb] -= w
        self.touch[nb] -= 1
        for u in nb[~self.inside[nb]].tolist():
            if self.touch[u] == 0:
                self.frontier.discard(u)
        if self.touch[v] > 0:
            self.frontier.add(v)

    def best_action(self) -> tuple[float, str, int] | None:
        """Highest-gain action; ties prefer add, then the smallest node."""
        fit = self.invol / self.vol
        best = None
        if self.frontier:
            cand = np.fromiter(self.frontier, dtype=np.int64)
            gain = (self.invol + 2 * self.links[cand]) / (self.vol + self.W.strength[cand]) - fit
            best = _pick(gain, cand, "add", None)
        if len(self.members) > 1:
            cand = np.fromiter(self.members, dtype=np.int64)
            rest = self.vol - self.W.strength[cand]
            ok = rest > 0
            if ok.any():
                cand = cand[ok]
                gain = (self.invol - 2 * self.links[cand]) / rest[ok] - fit
                best = _pick(gain, cand, "remove", best)
        return best

    def apply(self, action: str, v: int) -> None:
        if action == "add":
            self._add(v)
        else:
            self._remove(v)

    def community(self, history: list[float]) -> Community:
        return Community(set(self.members), self.invol, self.vol, history)


def _pick(gain: np.ndarray, cand: np.ndarray, action: str, best):
    top = gain.max()
    if best is not None and top <= best[0] + TIE_TOL:
        # an add already wins or ties
        return best
    tied = cand[gain >= top - TIE_TOL]
    return (float(top), action, int(tied.min()))


def adjust_community(W: WeightedAdjacency, seed: Iterable[int], max_actions: int | None = None) -> Community:
    """Greedily add/remove single nodes while subspace fitness increases.

    Each round evaluates removing any member and adding any node adjacent to
    the community, and applies the largest positive gain. Connectivity is not
    enforced.
    """
    state = _State(W, seed)
    if not state.members:
        raise FitnessError("empty seed")
    if state.vol <= 0:
        raise FitnessError("seed has no incident edges; fitness undefined")
    cap = 10 * W.n if max_actions is None else max_actions
    history = [state.invol / state.vol]
    for _ in range(cap):
        choice = state.best_action()
        if choice is None or choice[0] <= GAIN_TOL:
            return state.community(history)
        state.apply(choice[1], choice[2])
        history.append(state.invol / state.vol)
    raise ActionCapExceeded(f"no convergence after {cap} actions")
