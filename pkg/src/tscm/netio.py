"""Attributed network model and the edge-list / attribute-table file formats.

Edge list: one ``<idA> <idB>`` pair per line, ``#`` lines are comments.
Attribute table (tab separated)::

    name1   name2   ...
    num     cat     ...
    <id>    0.25    red ...

Internally nodes are dense indices ``0..n-1``; external string IDs are kept
in ``ids`` / ``index``.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)


class NetworkFormatError(ValueError):
    """Raised for malformed input files or inconsistent network data."""


class Kind(str, enum.Enum):
    NUMERICAL = "num"
    BINARY = "bin"
    CATEGORICAL = "cat"

    @classmethod
    def parse(cls, token: str) -> "Kind":
        aliases = {"numerical": "num", "binary": "bin", "categorical": "cat"}
        token = aliases.get(token.strip().lower(), token.strip().lower())
        try:
            return cls(token)
        except ValueError:
            raise NetworkFormatError(f"unknown attribute kind {token!r}") from None


@dataclass(frozen=True)
class AttributeKind:
    name: str
    kind: Kind
    # categorical domain (sorted labels); empty for other kinds
    categories: tuple[str, ...] = ()


@dataclass(eq=False)
class AttributedNetwork:
    """Undirected simple graph with a typed attribute vector per node.

    ``values`` is an ``(n, r)`` float array holding what the distance
    computations consume: min-max normalized numbers for numerical columns,
    0/1 for binary columns and the category index for categorical columns.
    ``raw`` keeps the unnormalized numerical input (other columns equal
    ``values``).
    """

    ids: list[str]
    edges: np.ndarray  # (m, 2) int64, each row u < v
    kinds: list[AttributeKind]
    raw: np.ndarray
    values: np.ndarray = field(init=False)
    index: dict[str, int] = field(init=False)
    indptr: np.ndarray = field(init=False)
    indices: np.ndarray = field(init=False)
    csr_edge: np.ndarray = field(init=False)  # edge id of each CSR entry

    def __post_init__(self) -> None:
        n = len(self.ids)
        self.index = {s: i for i, s in enumerate(self.ids)}
        if len(self.index) != n:
            raise NetworkFormatError("duplicate node id")
        self.kinds = list(self.kinds)
        names = [k.name for k in self.kinds]
        if len(set(names)) != len(names):
            raise NetworkFormatError("attribute names must be unique")
        self.raw = np.array(self.raw, dtype=float).reshape(n, len(self.kinds))
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        e = self.edges
        if len(e):
            if (e[:, 0] >= e[:, 1]).any():
                raise NetworkFormatError("edges must be stored as (u, v) with u < v")
            if e.min() < 0 or e.max() >= n:
                raise NetworkFormatError("edge endpoint out of range")
            if len(np.unique(e[:, 0] * n + e[:, 1])) != len(e):
                raise NetworkFormatError("duplicate edge")
        self._check_values()
        self._canonical_categories()
        self.values = _normalize(self.raw, self.kinds)
        self._build_csr()
        for a in (self.raw, self.values, self.edges, self.indptr, self.indices, self.csr_edge):
            a.flags.writeable = False

    def _check_values(self) -> None:
        for t, ak in enumerate(self.kinds):
            col = self.raw[:, t]
            if np.isnan(col).any():
                raise NetworkFormatError(f"attribute {ak.name!r} has missing values")
            if ak.kind is Kind.BINARY and not np.isin(col, (0.0, 1.0)).all():
                raise NetworkFormatError(f"binary attribute {ak.name!r} must be 0/1")
            if ak.kind is Kind.CATEGORICAL:
                ok = (col >= 0) & (col < len(ak.categories)) & (col == np.floor(col))
                if not ok.all():
                    raise NetworkFormatError(f"bad category index in {ak.name!r}")

    def _canonical_categories(self) -> None:
        # keep only used labels, sorted, so serialization round-trips exactly
        for t, ak in enumerate(self.kinds):
            if ak.kind is not Kind.CATEGORICAL:
                continue
            col = self.raw[:, t].astype(np.int64)
            used = sorted({ak.categories[i] for i in np.unique(col)})
            if tuple(used) == ak.categories:
                continue
            remap = np.array([used.index(c) if c in used else -1 for c in ak.categories])
            self.raw[:, t] = remap[col]
            self.kinds[t] = AttributeKind(ak.name, ak.kind, tuple(used))

    def _build_csr(self) -> None:
        n = self.n
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.lexsort((dst, src))
        self.indices = dst[order]
        self.csr_edge = np.tile(np.arange(self.m, dtype=np.int64), 2)[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=self.indptr[1:])

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def r(self) -> int:
        return len(self.kinds)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, v: int, u: int) -> bool:
        nb = self.neighbors(v)
        i = np.searchsorted(nb, u)
        return bool(i < len(nb) and nb[i] == u)

    def node(self, node_id: str) -> int:
        try:
            return self.index[node_id]
        except KeyError:
            raise KeyError(f"unknown node id {node_id!r}") from None

    def pair_diffs(self, v: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Per-attribute value differences for node pairs, shape ``(len(v), r)``.

        Numerical columns give the signed difference of normalized values,
        categorical columns 0/1 for equal/unequal labels and binary columns
        0 only when both nodes carry the attribute.
        """
        a = self.values[np.asarray(v)]
        b = self.values[np.asarray(u)]
        out = a - b
        for t, ak in enumerate(self.kinds):
            if ak.kind is Kind.CATEGORICAL:
                out[:, t] = (a[:, t] != b[:, t]).astype(float)
            elif ak.kind is Kind.BINARY:
                out[:, t] = 1.0 - a[:, t] * b[:, t]
        return out


def _normalize(raw: np.ndarray, kinds: Sequence[AttributeKind]) -> np.ndarray:
    values = raw.astype(float, copy=True)
    for t, ak in enumerate(kinds):
        if ak.kind is not Kind.NUMERICAL or raw.shape[0] == 0:
            continue
        col = raw[:, t]
        lo, hi = col.min(), col.max()
        # constant column carries no information: map to 0
        values[:, t] = 0.0 if hi == lo else (col - lo) / (hi - lo)
    return values


def attribute_diff(net: AttributedNetwork, t: int, v: int, u: int) -> float:
    """Value difference of attribute ``t`` between nodes ``v`` and ``u``.

    Numerical attributes return the absolute difference of the normalized
    values. Binary attributes return 0 only if both nodes have value 1, so a
    node with value 0 differs from itself.
    """
    if not 0 <= t < net.r:
        raise IndexError(f"attribute index {t} out of range")
    kind = net.kinds[t].kind
    a, b = net.values[v, t], net.values[u, t]
    if kind is Kind.NUMERICAL:
        return float(abs(a - b))
    if kind is Kind.CATEGORICAL:
        return 0.0 if a == b else 1.0
    return 0.0 if a == 1.0 and b == 1.0 else 1.0


def simple_edges(pairs: Iterable[tuple[int, int]], n: int) -> tuple[np.ndarray, int, int]:
    """Canonicalize raw pairs into a sorted simple edge array.

    Returns ``(edges, n_self_loops, n_duplicates)``.
    """
    arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    loops = arr[:, 0] == arr[:, 1]
    arr = np.sort(arr[~loops], axis=1)
    keys = arr[:, 0] * max(n, 1) + arr[:, 1]
    uniq, first = np.unique(keys, return_index=True)
    return arr[first], int(loops.sum()), len(arr) - len(uniq)


def build_network(
    ids: Sequence[str],
    pairs: Iterable[tuple[int, int]],
    kinds: Sequence[AttributeKind],
    raw: np.ndarray,
) -> AttributedNetwork:
    """Construct a network from index pairs, dropping self-loops and duplicates."""
    edges, loops, dups = simple_edges(pairs, len(ids))
    if loops or dups:
        log.warning("dropped %d self-loop(s) and %d duplicate edge(s)", loops, dups)
    return AttributedNetwork(list(ids), edges, list(kinds), raw)


def load_network(graph_path: str | Path, attrs_path: str | Path) -> AttributedNetwork:
    """Read an edge list plus attribute table into a validated network."""
    ids, kinds, raw = _read_attrs(Path(attrs_path))
    index = {s: i for i, s in enumerate(ids)}
    pairs = []
    with open(graph_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != 2:
                raise NetworkFormatError(f"{graph_path}:{lineno}: expected two node ids")
            try:
                pairs.append((index[parts[0]], index[parts[1]]))
            except KeyError as exc:
                raise NetworkFormatError(
                    f"{graph_path}:{lineno}: node {exc.args[0]!r} missing from attribute file"
                ) from None
    return build_network(ids, pairs, kinds, raw)


def _read_attrs(path: Path) -> tuple[list[str], list[AttributeKind], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\r\n") for ln in fh]
    if len(lines) < 2:
        raise NetworkFormatError(f"{path}: missing header lines")
    names = lines[0].split("\t")
    kind_tokens = lines[1].split("\t")
    if len(kind_tokens) != len(names):
        raise NetworkFormatError(f"{path}:2: {len(kind_tokens)} kinds for {len(names)} names")
    kinds = [Kind.parse(k) for k in kind_tokens]
    r = len(names)
    ids: list[str] = []
    rows: list[list[float]] = []
    cats: list[dict[str, int]] = [{} for _ in range(r)]
    for lineno, line in enumerate(lines[2:], 3):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != r + 1:
            raise NetworkFormatError(f"{path}:{lineno}: expected {r + 1} fields, got {len(parts)}")
        row = []
        for t, (tok, kind) in enumerate(zip(parts[1:], kinds)):
            row.append(_parse_value(tok, kind, cats[t], f"{path}:{lineno}"))
        ids.append(parts[0])
        rows.append(row)
    if len(set(ids)) != len(ids):
        raise NetworkFormatError(f"{path}: duplicate node id")
    akinds = [
        AttributeKind(name, kind, tuple(cats[t]) if kind is Kind.CATEGORICAL else ())
        for t, (name, kind) in enumerate(zip(names, kinds))
    ]
    return ids, akinds, np.array(rows, dtype=float).reshape(len(ids), r)


def _parse_value(tok: str, kind: Kind, cats: dict[str, int], where: str) -> float:
    if kind is Kind.CATEGORICAL:
        return float(cats.setdefault(tok, len(cats)))
    if kind is Kind.BINARY:
        if tok not in ("0", "1"):
            raise NetworkFormatError(f"{where}: binary value must be 0 or 1, got {tok!r}")
        return float(tok)
    try:
        x = float(tok)
    except ValueError:
        raise NetworkFormatError(f"{where}: not a number: {tok!r}") from None
    if not np.isfinite(x):
        raise NetworkFormatError(f"{where}: non-finite value {tok!r}")
    return x


def format_value(x: float, ak: AttributeKind) -> str:
    if ak.kind is Kind.CATEGORICAL:
        return ak.categories[int(x)]
    if ak.kind is Kind.BINARY:
        return str(int(x))
    return repr(float(x))


def write_network(net: AttributedNetwork, graph_path: str | Path, attrs_path: str | Path) -> None:
    """Serialize ``net`` so that :func:`load_network` reproduces it exactly."""
    with open(graph_path, "w", encoding="utf-8") as fh:
        for u, v in net.edges:
            fh.write(f"{net.ids[u]} {net.ids[v]}\n")
    with open(attrs_path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(k.name for k in net.kinds) + "\n")
        fh.write("\t".join(k.kind.value for k in net.kinds) + "\n")
        for i, node_id in enumerate(net.ids):
            vals = (format_value(net.raw[i, t], ak) for t, ak in enumerate(net.kinds))
            fh.write(node_id + "\t" + "\t".join(vals) + "\n")
