"""Immutable weighted graphs with metered adjacency-list access.

The estimators never touch a :class:`WeightedGraph` directly. They go through
an :class:`AccessSession`, which counts how many adjacency entries were read,
and a :class:`ThresholdView`, which exposes the subgraph of edges at or below
(distance) or at or above (similarity) a weight threshold. Threshold edges are
implicit: listing a vertex's view neighbours means reading its whole list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DuplicateEdge,
    NonIntegerWeight,
    NonPositiveWeight,
    SelfLoop,
    VertexOutOfRange,
)


class Mode(str, enum.Enum):
    """Clustering mode. Distance views keep ``w <= j``, similarity views ``w >= j``."""

    DISTANCE = "distance"
    SIMILARITY = "similarity"

    @classmethod
    def parse(cls, value: "Mode | str") -> "Mode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown mode {value!r}; expected 'distance' or 'similarity'") from None


class AccessModel(str, enum.Enum):
    UNIT = "unit"
    PREFIX = "prefix"

    @classmethod
    def parse(cls, value: "AccessModel | str") -> "AccessModel":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown access model {value!r}; expected 'unit' or 'prefix'") from None


def _as_int64(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.dtype.kind in "iub":
        return arr.astype(np.int64, copy=False)
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or np.any(arr != np.floor(arr)):
            raise NonIntegerWeight(f"{name} must be integers")
        return arr.astype(np.int64)
    if arr.size == 0:
        return arr.astype(np.int64)
    raise TypeError(f"{name} must be numeric, got dtype {arr.dtype}")


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected simple graph in CSR form.

    ``indptr[v]:indptr[v+1]`` delimits the adjacency list of ``v`` in
    ``nbr`` and ``wts``. Each undirected edge appears once per endpoint.
    """

    n: int
    indptr: np.ndarray
    nbr: np.ndarray
    wts: np.ndarray
    W: int
    num_components: int
    labels: np.ndarray | None = None
    weight_scale: float = 1.0
    _degrees: np.ndarray = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return int(self.nbr.shape[0] // 2)

    @property
    def avg_degree(self) -> Fraction:
        return Fraction(2 * self.m, self.n) if self.n else Fraction(0)

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def is_connected(self) -> bool:
        return self.num_components == 1

    def adjacency(self, v: int) -> list[tuple[int, int]]:
        """Unmetered adjacency list of ``v``. Meant for oracles and tests."""
        self._check_vertex(v)
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return list(zip(self.nbr[lo:hi].tolist(), self.wts[lo:hi].tolist()))

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Each undirected edge once, as ``(u, v, w)`` arrays with ``u < v``."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self._degrees)
        keep = src < self.nbr
        return src[keep], self.nbr[keep], self.wts[keep]

    def canonical_edges(self) -> np.ndarray:
        u, v, w = self.edges()
        order = np.lexsort((w, v, u))
        return np.stack([u[order], v[order], w[order]], axis=1)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in [0, {self.n})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.canonical_edges(), other.canonical_edges())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, W={self.W}, components={self.num_components})"


def build_graph(
    edges: Iterable[Sequence] | None = None,
    n: int | None = None,
    *,
    u=None,
    v=None,
    w=None,
    labels: np.ndarray | None = None,
    weight_scale: float = 1.0,
) -> WeightedGraph:
    """Build a graph from ``(u, v, w)`` triples or from parallel arrays.

    ``n`` defaults to one more than the largest vertex id. Self-loops,
    non-positive or non-integer weights and repeated vertex pairs are
    rejected.
    """
    if edges is not None:
        rows = list(edges)
        if rows:
            arr = np.asarray(rows)
            if arr.ndim != 2 or arr.shape[1] != 3:
                raise ValueError("edges must be (u, v, w) triples")
            u, v, w = arr[:, 0], arr[:, 1], arr[:, 2]
        else:
            u = v = w = np.zeros(0, dtype=np.int64)
    elif u is None or v is None or w is None:
        raise ValueError("pass either edges or all of u, v, w")

    u = _as_int64(u, "vertex ids")
    v = _as_int64(v, "vertex ids")
    w = _as_int64(w, "weights")
    if not (u.shape == v.shape == w.shape) or u.ndim != 1:
        raise ValueError("u, v, w must be 1-d arrays of equal length")

    if np.any(w <= 0):
        raise NonPositiveWeight(f"weight {int(w[w <= 0][0])} is not positive")
    if np.any(u == v):
        raise SelfLoop(f"self-loop at vertex {int(u[u == v][0])}")
    top = int(max(u.max(initial=-1), v.max(initial=-1)))
    if n is None:
        n = top + 1
    n = int(n)
    if top >= n or (u.size and min(u.min(), v.min()) < 0):
        raise VertexOutOfRange(f"vertex ids must lie in [0, {n})")

    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = lo * max(n, 1) + hi
    uniq, counts = np.unique(key, return_counts=True)
    if uniq.size != key.size:
        bad = uniq[counts > 1][0]
        raise DuplicateEdge(f"edge ({int(bad // n)}, {int(bad % n)}) given more than once")

    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    ww = np.concatenate([w, w])
    order = np.argsort(src, kind="stable")
    deg = np.bincount(src, minlength=n).astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])

    if n:
        adj = coo_matrix((np.ones(u.size, dtype=np.int8), (u, v)), shape=(n, n))
        ncomp = int(connected_components(adj, directed=False, return_labels=False))
    else:
        ncomp = 0

    return WeightedGraph(
        n=n,
        indptr=indptr,
        nbr=np.ascontiguousarray(dst[order]),
        wts=np.ascontiguousarray(ww[order]),
        W=int(w.max()) if w.size else 1,
        num_components=ncomp,
        labels=labels,
        weight_scale=float(weight_scale),
        _degrees=deg,
    )


def permute_adjacency(graph: WeightedGraph, rng: np.random.Generator) -> WeightedGraph:
    """Return a copy of ``graph`` with every adjacency list shuffled independently."""
    src = np.repeat(np.arange(graph.n, dtype=np.int64), graph.degrees)
    # a uniform fraction added to the owner id shuffles within each list only
    order = np.argsort(src + rng.random(src.size), kind="stable")
    return WeightedGraph(
        n=graph.n,
        indptr=graph.indptr,
        nbr=np.ascontiguousarray(graph.nbr[order]),
        wts=np.ascontiguousarray(graph.wts[order]),
        W=graph.W,
        num_components=graph.num_components,
        labels=graph.labels,
        weight_scale=graph.weight_scale,
        _degrees=graph.degrees,
    )


class AccessSession:
    """Per-run meter of adjacency entries read.

    Under the unit model every entry costs 1. Under the prefix model reading
    the i-th entry of a list costs i, so a scan of positions ``a+1..b`` costs
    ``sum(range(a+1, b+1))``.
    """

    def __init__(self, graph: WeightedGraph, model: AccessModel | str = AccessModel.UNIT):
        self.graph = graph
        self.model = AccessModel.parse(model)
        self._entries = 0

    @property
    def entries_scanned(self) -> int:
        return self._entries

    def charge(self, unit: int, prefix: int) -> None:
        """Record a batch of reads measured under both models."""
        if unit < 0 or prefix < 0:
            raise ValueError("charges must be non-negative")
        self._entries += int(unit if self.model is AccessModel.UNIT else prefix)

    def charge_scan(self, v: int, start: int, stop: int) -> None:
        """Charge reading positions ``start..stop-1`` (0-based) of v's list."""
        count = stop - start
        self.charge(count, (start + 1 + stop) * count // 2)

    def charge_full_scan(self, v: int) -> None:
        self.charge_scan(v, 0, int(self.graph.degrees[v]))

    def view(self, j: int, mode: Mode | str) -> "ThresholdView":
        return ThresholdView(self, j, Mode.parse(mode))

    def __repr__(self) -> str:
        return f"AccessSession(model={self.model.value}, entries_scanned={self._entries})"


@dataclass(frozen=True)
class ThresholdView:
    """Edges with ``w <= j`` (distance) or ``w >= j`` (similarity)."""

    session: AccessSession
    j: int
    mode: Mode

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))

    @property
    def graph(self) -> WeightedGraph:
        return self.session.graph

    @property
    def at_least(self) -> bool:
        return self.mode is Mode.SIMILARITY

    def passes(self, w: int) -> bool:
        return w >= self.j if self.at_least else w <= self.j


def view_neighbors(view: ThresholdView, v: int) -> list[tuple[int, int]]:
    """Neighbours of ``v`` inside the view. Reads, and charges, the full list."""
    g = view.graph
    g._check_vertex(v)
    lo, hi = int(g.indptr[v]), int(g.indptr[v + 1])
    view.session.charge_scan(v, 0, hi - lo)
    nb, ws = g.nbr[lo:hi], g.wts[lo:hi]
    keep = ws >= view.j if view.at_least else ws <= view.j
    return list(zip(nb[keep].tolist(), ws[keep].tolist()))


def degree(session: AccessSession, v: int) -> int:
    """deg(v). Finding it means walking the list, so it is charged like a scan."""
    session.graph._check_vertex(v)
    session.charge_full_scan(v)
    return int(session.graph.degrees[v])
