"""LFR-style attributed benchmark graphs with planted focus-attribute subspaces.

Degrees and community sizes follow truncated power laws; each node puts a
``1 - mu`` share of its stubs inside its community and the rest outside, and
both stub pools are wired by configuration-model matching with rejection and
degree-preserving edge switches. Attributes are then planted: ``b`` target
communities share one random focus set, every other community gets its own,
and a node copies its community's characteristic value on a focus attribute
with probability ``p``.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .metrics import Subspace
from .netio import AttributedNetwork, AttributeKind, Kind, build_network, write_network

log = logging.getLogger(__name__)

NOISE_SIGMA = 0.05
N_CATEGORIES = 10
MATCH_ROUNDS = 50
SWITCH_TRIES = 200


class InfeasibleConfig(ValueError):
    pass


@dataclass
class BenchmarkConfig:
    tau1: float = 2.0
    tau2: float = 1.0
    n: int = 5000
    d_avg: float = 30.0
    d_max: int = 100
    c_min: int = 40
    c_max: int = 80
    mu: float = 0.2
    r: int = 20
    t: int = 6
    b: int = 5
    p: float = 0.9
    attr_kind: str = "num"
    rng_seed: int = 0

    def validate(self) -> None:
        kind = Kind.parse(self.attr_kind)
        self.attr_kind = kind.value
        if self.n < 1 or self.r < 1 or self.t < 1 or self.b < 0:
            raise InfeasibleConfig("n, r, t must be positive and b nonnegative")
        if not 0 < self.c_min <= self.c_max:
            raise InfeasibleConfig("need 0 < c_min <= c_max")
        if self.c_min > self.n:
            raise InfeasibleConfig("c_min exceeds n")
        if self.t > self.r:
            raise InfeasibleConfig("subspace size t exceeds attribute count r")
        if not (0 <= self.mu <= 1 and 0 <= self.p <= 1):
            raise InfeasibleConfig("mu and p must lie in [0, 1]")
        if not 1 <= self.d_avg <= self.d_max:
            raise InfeasibleConfig("need 1 <= d_avg <= d_max")
        if self.d_max >= self.n:
            raise InfeasibleConfig("d_max must be below n")


@dataclass
class BenchmarkInstance:
    network: AttributedNetwork
    communities: list[list[int]]
    planted: list[Subspace]
    target_ids: list[int]
    focus: list[list[int]]
    config: BenchmarkConfig
    stats: dict = field(default_factory=dict)

    @property
    def target_subspace(self) -> Subspace:
        return self.planted[self.target_ids[0]]

    @property
    def targets(self) -> list[list[int]]:
        return [self.communities[i] for i in self.target_ids]

    def membership(self) -> np.ndarray:
        out = np.empty(self.network.n, dtype=np.int64)
        for ci, members in enumerate(self.communities):
            out[members] = ci
        return out


# -- power-law sampling ---------------------------------------------------

def _powerlaw_mean(lo: float, hi: float, tau: float) -> float:
    if abs(tau - 1) < 1e-12:
        return (hi - lo) / math.log(hi / lo)
    if abs(tau - 2) < 1e-12:
        return math.log(hi / lo) / (1 / lo - 1 / hi)
    a, b = 1 - tau, 2 - tau
    return (a / b) * (hi**b - lo**b) / (hi**a - lo**a)


def _powerlaw_sample(lo: float, hi: float, tau: float, size: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.random(size)
    if abs(tau - 1) < 1e-12:
        return lo * (hi / lo) ** u
    a = 1 - tau
    return ((hi**a - lo**a) * u + lo**a) ** (1 / a)


def _solve_min_degree(mean: float, hi: float, tau: float) -> float:
    """Lower cutoff making the truncated power law's mean equal ``mean``."""
    if mean >= hi:
        return hi
    lo_a, lo_b = 1e-6, hi
    for _ in range(200):
        mid = 0.5 * (lo_a + lo_b)
        if _powerlaw_mean(mid, hi, tau) < mean:
            lo_a = mid
        else:
            lo_b = mid
    return 0.5 * (lo_a + lo_b)


def sample_degrees(cfg: BenchmarkConfig, d_cap: int, rng: np.random.Generator) -> np.ndarray:
    hi = float(min(cfg.d_max, d_cap))
    if cfg.d_avg > hi:
        raise InfeasibleConfig(f"d_avg={cfg.d_avg} unreachable with effective d_max={hi:g}")
    lo = max(1.0, _solve_min_degree(cfg.d_avg, hi, cfg.tau1))
    deg = np.rint(_powerlaw_sample(lo, hi, cfg.tau1, cfg.n, rng)).astype(np.int64)
    return np.clip(deg, 1, int(hi))


def sample_community_sizes(cfg: BenchmarkConfig, rng: np.random.Generator) -> list[int]:
    sizes: list[int] = []
    while sum(sizes) < cfg.n:
        s = int(np.rint(_powerlaw_sample(cfg.c_min, cfg.c_max, cfg.tau2, 1, rng)[0]))
        sizes.append(min(max(s, cfg.c_min), cfg.c_max))
    excess = sum(sizes) - cfg.n
    if excess > sum(s - cfg.c_min for s in sizes):
        sizes.pop()
    _rebalance(sizes, cfg.n - sum(sizes), cfg.c_min, cfg.c_max, rng)
    return sizes


def _rebalance(sizes: list[int], delta: int, lo: int, hi: int, rng: np.random.Generator) -> None:
    step = 1 if delta > 0 else -1
    while delta:
        movable = [i for i, s in enumerate(sizes) if lo <= s + step <= hi]
        if not movable:
            raise InfeasibleConfig("community sizes cannot be made to sum to n")
        i = movable[int(rng.integers(len(movable)))]
        sizes[i] += step
        delta -= step


# -- wiring ---------------------------------------------------------------

def _assign_communities(k_in: np.ndarray, sizes: list[int], rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """Place nodes so each internal degree fits its community (largest first)."""
    n = len(k_in)
    order = _stable_desc(k_in, rng)
    room = np.array(sizes, dtype=np.int64)
    size_arr = np.array(sizes, dtype=np.int64)
    comm = np.empty(n, dtype=np.int64)
    clamped = 0
    for v in order.tolist():
        eligible = np.flatnonzero((room > 0) & (size_arr - 1 >= k_in[v]))
        if len(eligible) == 0:
            open_ = np.flatnonzero(room > 0)
            c = int(open_[np.argmax(size_arr[open_])])
            k_in[v] = size_arr[c] - 1
            clamped += 1
        else:
            c = int(eligible[rng.integers(len(eligible))])
        comm[v] = c
        room[c] -= 1
    return comm, clamped


def _stable_desc(k: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    perm = rng.permutation(len(k))
    return perm[np.argsort(-k[perm], kind="stable")]


def _wire(
    nodes: np.ndarray,
    counts: np.ndarray,
    edges: set[tuple[int, int]],
    rng: np.random.Generator,
    allowed: Callable[[int, int], bool] = lambda a, b: True,
) -> int:
    """Match stubs of ``nodes`` into new simple edges added to ``edges``.

    Returns the number of stubs left unmatched.
    """
    counts = counts.copy()
    if counts.sum() % 2:
        counts[int(np.argmax(counts))] -= 1
    stubs = np.repeat(nodes, counts)
    pool_edges: list[tuple[int, int]] = []

    def ok(a: int, b: int) -> bool:
        return a != b and (min(a, b), max(a, b)) not in edges and allowed(a, b)

    def add(a: int, b: int) -> None:
        e = (min(a, b), max(a, b))
        edges.add(e)
        pool_edges.append(e)

    for _ in range(MATCH_ROUNDS):
        if len(stubs) < 2:
            break
        rng.shuffle(stubs)
        left = []
        for a, b in stubs.reshape(-1, 2).tolist():
            if ok(a, b):
                add(a, b)
            else:
                left += (a, b)
        if len(left) == len(stubs):
            break
        stubs = np.array(left, dtype=np.int64)
    # degree-preserving switches: (a,b) + (c,d) -> (a,c) + (b,d)
    left = stubs.tolist()
    rest = []
    while len(left) >= 2:
        b, a = left.pop(), left.pop()
        done = False
        for _ in range(SWITCH_TRIES if pool_edges else 0):
            k = int(rng.integers(len(pool_edges)))
            c, d = pool_edges[k]
            if rng.random() < 0.5:
                c, d = d, c
            if len({a, b, c, d}) == 4 and ok(a, c) and ok(b, d):
                edges.discard(pool_edges[k])
                pool_edges[k] = pool_edges[-1]
                pool_edges.pop()
                add(a, c)
                add(b, d)
                done = True
                break
        if not done:
            rest += (a, b)
    return len(rest) + len(left)


def generate(cfg: BenchmarkConfig) -> BenchmarkInstance:
    cfg.validate()
    rng = np.random.default_rng(cfg.rng_seed)
    sizes = sample_community_sizes(cfg, rng)
    # internal degree must fit inside the largest community
    d_cap = cfg.d_max if cfg.mu >= 1 else int((cfg.c_max - 1) / (1 - cfg.mu))
    if d_cap < cfg.d_max:
        log.info("capping d_max at %d so internal degrees fit communities", d_cap)
    deg = sample_degrees(cfg, d_cap, rng)
    k_in = np.rint((1 - cfg.mu) * deg).astype(np.int64)
    k_out = deg - k_in
    comm, clamped = _assign_communities(k_in, sizes, rng)
    if clamped:
        log.warning("%d node(s) had internal degree clamped to fit their community", clamped)

    edges: set[tuple[int, int]] = set()
    members = [np.flatnonzero(comm == c) for c in range(len(sizes))]
    dropped = 0
    for c, mem in enumerate(members):
        dropped += _wire(mem, k_in[mem], edges, rng)
    all_nodes = np.arange(cfg.n, dtype=np.int64)
    dropped += _wire(all_nodes, k_out, edges, rng, lambda a, b: comm[a] != comm[b])
    if dropped:
        log.warning("dropped %d unmatched stub(s)", dropped)

    raw, kinds, planted, target_ids, focus = _plant_attributes(cfg, comm, len(sizes), rng)
    net = build_network([str(i) for i in range(cfg.n)], sorted(edges), kinds, raw)
    inst = BenchmarkInstance(net, [m.tolist() for m in members], planted, target_ids, focus, cfg)
    inst.stats = benchmark_stats(inst)
    inst.stats.update(dropped_stubs=dropped, clamped_nodes=clamped, d_max_effective=min(cfg.d_max, d_cap))
    return inst


def _plant_attributes(cfg: BenchmarkConfig, comm: np.ndarray, n_comm: int, rng: np.random.Generator):
    kind = Kind(cfg.attr_kind)
    if cfg.b > n_comm:
        raise InfeasibleConfig(f"b={cfg.b} exceeds the {n_comm} generated communities")
    target_ids = sorted(rng.choice(n_comm, size=cfg.b, replace=False).tolist())
    target_focus = sorted(rng.choice(cfg.r, size=cfg.t, replace=False).tolist())
    focus = [
        target_focus if c in target_ids else sorted(rng.choice(cfg.r, size=cfg.t, replace=False).tolist())
        for c in range(n_comm)
    ]
    n, r = cfg.n, cfg.r
    if kind is Kind.NUMERICAL:
        raw = rng.random((n, r))
        center = rng.random((n_comm, r))
    elif kind is Kind.BINARY:
        raw = rng.integers(0, 2, size=(n, r)).astype(float)
        center = np.ones((n_comm, r))
    else:
        raw = rng.integers(0, N_CATEGORIES, size=(n, r)).astype(float)
        center = rng.integers(0, N_CATEGORIES, size=(n_comm, r)).astype(float)
    is_focus = np.zeros((n_comm, r), dtype=bool)
    for c, f in enumerate(focus):
        is_focus[c, f] = True
    take = is_focus[comm] & (rng.random((n, r)) < cfg.p)
    value = center[comm]
    if kind is Kind.NUMERICAL:
        value = np.clip(value + rng.normal(0.0, NOISE_SIGMA, size=(n, r)), 0.0, 1.0)
    raw = np.where(take, value, raw)
    if kind is Kind.CATEGORICAL:
        cats = tuple(f"v{i}" for i in range(N_CATEGORIES))
        kinds = [AttributeKind(f"a{t}", kind, cats) for t in range(r)]
    else:
        kinds = [AttributeKind(f"a{t}", kind) for t in range(r)]
    planted = [Subspace.focus(r, f) for f in focus]
    return raw, kinds, planted, target_ids, focus


def benchmark_stats(inst: BenchmarkInstance) -> dict:
    net = inst.network
    memb = inst.membership()
    e = net.edges
    external = int((memb[e[:, 0]] != memb[e[:, 1]]).sum())
    sizes = [len(c) for c in inst.communities]
    return {
        "n": net.n,
        "m": net.m,
        "mean_degree": 2 * net.m / net.n if net.n else 0.0,
        "mixing": external / net.m if net.m else 0.0,
        "n_communities": len(sizes),
        "min_size": min(sizes),
        "max_size": max(sizes),
    }


def write_benchmark(inst: BenchmarkInstance, out_dir: str | Path, prefix: str = "bench") -> dict[str, Path]:
    """Write edge list, attribute table, ground truth and the subspace sidecar."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "graph": out / f"{prefix}.edges",
        "attrs": out / f"{prefix}.attrs.tsv",
        "truth": out / f"{prefix}.communities",
        "subspace": out / f"{prefix}.subspace.json",
    }
    write_network(inst.network, paths["graph"], paths["attrs"])
    ids = inst.network.ids
    with open(paths["truth"], "w", encoding="utf-8") as fh:
        for members in inst.communities:
            fh.write(" ".join(ids[v] for v in members) + "\n")
    sidecar = {
        "target_subspace": inst.target_subspace.tolist(),
        "target_communities": inst.target_ids,
        "focus": inst.focus,
        "planted": [l.tolist() for l in inst.planted],
        "config": asdict(inst.config),
        "stats": inst.stats,
    }
    with open(paths["subspace"], "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return paths
