"""Straight-line reference computations used as test oracles.

Nothing here imports the code under test beyond plain data access; every
function recomputes its quantity from scratch with loops or dense matrices.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def diff(kind: str, a: float, b: float) -> float:
    if kind == "num":
        return a - b
    if kind == "cat":
        return 0.0 if a == b else 1.0
    return 0.0 if (a == 1 and b == 1) else 1.0


def distance(values, kinds, weights, v, u) -> float:
    total = 0.0
    for t, kind in enumerate(kinds):
        d = diff(kind, values[v][t], values[u][t])
        total += weights[t] * d * d
    return math.sqrt(total)


def dense_weights(n, edges, values, kinds, weights) -> np.ndarray:
    A = np.zeros((n, n))
    for u, v in edges:
        A[u, v] = A[v, u] = math.exp(-distance(values, kinds, weights, u, v))
    return A


def fitness(A: np.ndarray, members) -> float:
    idx = sorted(members)
    vol = A[idx, :].sum()
    if vol == 0:
        raise ZeroDivisionError
    return A[np.ix_(idx, idx)].sum() / vol


def hill_climb_trace(A: np.ndarray, seed, tie_tol=1e-12, gain_tol=1e-12):
    """Greedy add/remove with full recomputation and the documented tie policy.

    Returns the list of visited member sets (seed first).
    """
    n = len(A)
    C = set(seed)
    trace = [frozenset(C)]
    for _ in range(10 * n):
        f = fitness(A, C)
        options = []
        adj = {v for v in range(n) if v not in C and any(A[v, u] > 0 or _edge(A, v, u) for u in C)}
        for v in sorted(adj):
            options.append((fitness(A, C | {v}) - f, 0, v))
        if len(C) > 1:
            for v in sorted(C):
                rest = C - {v}
                if A[sorted(rest), :].sum() > 0:
                    options.append((fitness(A, rest) - f, 1, v))
        if not options:
            break
        top = max(o[0] for o in options)
        if top <= gain_tol:
            break
        # prefer add (0) over remove (1), then the smallest node
        gain, kind, v = min((o for o in options if o[0] >= top - tie_tol), key=lambda o: (o[1], o[2]))
        C = C | {v} if kind == 0 else C - {v}
        trace.append(frozenset(C))
    return trace


def _edge(A, v, u) -> bool:
    return A[v, u] != 0


def eq7_subspace(values, kinds, similar_pairs, random_pairs) -> np.ndarray:
    r = len(kinds)
    out = np.zeros(r)
    for t in range(r):
        hs = sum(diff(kinds[t], values[a][t], values[b][t]) ** 2 for a, b in similar_pairs) / len(similar_pairs)
        hr = sum(diff(kinds[t], values[a][t], values[b][t]) ** 2 for a, b in random_pairs) / len(random_pairs)
        out[t] = hr / (hs + 1 / len(similar_pairs)) if hs < hr else 0.0
    if out.sum() == 0:
        return np.full(r, 1 / r)
    return out / out.sum()


def f1_by_enumeration(truth, detected) -> float:
    universe = set(truth) | set(detected)
    tp = sum(1 for x in universe if x in truth and x in detected)
    fp = sum(1 for x in universe if x not in truth and x in detected)
    fn = sum(1 for x in universe if x in truth and x not in detected)
    return 0.0 if tp == 0 else 2 * tp / (2 * tp + fp + fn)


def jaccard_by_enumeration(a, b) -> float:
    universe = set(a) | set(b)
    return sum(1 for x in universe if x in a and x in b) / len(universe)


def all_local_optimum(A, C, tol=1e-9) -> bool:
    """No single add of an adjacent node or removal improves fitness by more than ``tol``."""
    n = len(A)
    f = fitness(A, C)
    for v in range(n):
        if v in C:
            rest = C - {v}
            if rest and A[sorted(rest), :].sum() > 0 and fitness(A, rest) - f > tol:
                return False
        elif any(A[v, u] > 0 for u in C) and fitness(A, C | {v}) - f > tol:
            return False
    return True


def subsets(nodes):
    nodes = list(nodes)
    for k in range(1, len(nodes) + 1):
        yield from itertools.combinations(nodes, k)
