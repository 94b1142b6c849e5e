"""Attribute subspaces and the similarity / distance primitives built on them."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .netio import AttributedNetwork


class InvalidSubspaceError(ValueError):
    pass


class Subspace:
    """Nonnegative attribute-importance weights summing to one."""

    __slots__ = ("weights",)

    def __init__(self, weights: Sequence[float] | np.ndarray):
        w = np.array(weights, dtype=float).ravel()
        if w.size == 0:
            raise InvalidSubspaceError("empty subspace")
        if not np.isfinite(w).all() or (w < 0).any():
            raise InvalidSubspaceError("subspace weights must be finite and nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise InvalidSubspaceError(f"subspace weights sum to {w.sum()!r}, expected 1")
        w.flags.writeable = False
        self.weights = w

    @classmethod
    def normalized(cls, weights: Sequence[float] | np.ndarray) -> "Subspace":
        w = np.asarray(weights, dtype=float)
        total = w.sum()
        if total <= 0:
            raise InvalidSubspaceError("cannot normalize an all-zero weight vector")
        return cls(w / total)

    @classmethod
    def uniform(cls, r: int) -> "Subspace":
        return cls(np.full(r, 1.0 / r))

    @classmethod
    def focus(cls, r: int, attrs: Sequence[int]) -> "Subspace":
        """Equal weight ``1/len(attrs)`` on ``attrs``, zero elsewhere."""
        w = np.zeros(r)
        w[list(attrs)] = 1.0 / len(attrs)
        return cls(w)

    def __len__(self) -> int:
        return len(self.weights)

    def __repr__(self) -> str:
        return f"Subspace({np.array2string(self.weights, precision=4)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and np.array_equal(self.weights, other.weights)

    def __hash__(self) -> int:
        return hash(self.weights.tobytes())

    def tolist(self) -> list[float]:
        return self.weights.tolist()


def _check_length(net: AttributedNetwork, l: Subspace) -> None:
    if len(l) != net.r:
        raise InvalidSubspaceError(f"subspace has {len(l)} weights, network has {net.r} attributes")


def weighted_distance(net: AttributedNetwork, l: Subspace, v: int, u: int) -> float:
    _check_length(net, l)
    d = net.pair_diffs(np.array([v]), np.array([u]))[0]
    return math.sqrt(float(np.dot(l.weights, d * d)))


def subspace_similarity_nodes(net: AttributedNetwork, l: Subspace, v: int, u: int) -> float:
    return math.exp(-weighted_distance(net, l, v, u))


def pair_similarities(net: AttributedNetwork, l: Subspace, v: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Vectorized exponential-kernel similarity for arrays of node pairs."""
    _check_length(net, l)
    d = net.pair_diffs(v, u)
    return np.exp(-np.sqrt((d * d) @ l.weights))


def subspace_cosine(l1: Subspace | np.ndarray, l2: Subspace | np.ndarray) -> float:
    a = l1.weights if isinstance(l1, Subspace) else np.asarray(l1, dtype=float)
    b = l2.weights if isinstance(l2, Subspace) else np.asarray(l2, dtype=float)
    if a.shape != b.shape:
        raise InvalidSubspaceError("subspaces differ in length")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise InvalidSubspaceError("cosine of an all-zero vector is undefined")
    return float(min(1.0, max(0.0, np.dot(a, b) / (na * nb))))
