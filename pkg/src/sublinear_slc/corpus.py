"""Reading, cleaning and writing graph files.

Text input is a whitespace edge list (``u v w`` or ``u v``) with ``#``
comments, or DIMACS shortest-path format (``a u v w`` lines). Ingestion keeps
the largest connected component and relabels it ``0..n-1`` in the order of
the original ids. Non-integer weights are divided by ``eps``, floored and
clamped to at least 1.
"""

from __future__ import annotations

import json
import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import EmptyGraph, ParseError
from .graph import WeightedGraph, build_graph

MAGIC = b"SLCS1"
CACHE_SUFFIX = ".slcs"
CACHE_MIN_EDGES = 1_000_000

FORMATS = ("weighted", "unweighted", "dimacs")
WEIGHT_RULES = ("as-is", "euclidean", "cooccurrence")
DEDUPE = ("error", "min", "max", "first")


@dataclass(frozen=True)
class CorpusSpec:
    """How to turn a file into a connected integer-weighted graph.

    ``cap`` clamps weights from above after rounding (useful for raw
    co-occurrence counts). ``eps`` is required when weights are not integers.
    """

    path: str | os.PathLike
    format: str = "weighted"
    weight_rule: str = "as-is"
    coords_path: str | os.PathLike | None = None
    eps: float | None = None
    cap: int | None = None
    largest_component: bool = True
    drop_self_loops: bool = True
    dedupe: str = "error"

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.weight_rule not in WEIGHT_RULES:
            raise ValueError(f"weight_rule must be one of {WEIGHT_RULES}")
        if self.dedupe not in DEDUPE:
            raise ValueError(f"dedupe must be one of {DEDUPE}")
        if self.weight_rule == "euclidean" and self.coords_path is None:
            raise ValueError("the euclidean weight rule needs coords_path")


def round_weights(w: np.ndarray, eps: float) -> np.ndarray:
    """Scale by 1/eps, floor and clamp to at least 1.

    Flooring is monotone, so every spanning tree that is optimal for the
    scaled real weights stays optimal for the rounded ones.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return np.maximum(1, np.floor(np.asarray(w, dtype=float) / eps)).astype(np.int64)


def _parse_edges(path: Path, fmt: str):
    us, vs, ws = [], [], []
    weighted = fmt in ("weighted", "dimacs")
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#") or s.startswith("%"):
                continue
            parts = s.split()
            if fmt == "dimacs":
                if parts[0] in ("c", "p"):
                    continue
                if parts[0] != "a":
                    raise ParseError(f"unexpected DIMACS line {s!r}", path=path, line=lineno)
                parts = parts[1:]
            need = 3 if weighted else 2
            if len(parts) < need:
                raise ParseError(f"expected {need} fields, got {len(parts)}", path=path, line=lineno)
            try:
                us.append(int(parts[0]))
                vs.append(int(parts[1]))
                if weighted:
                    ws.append(float(parts[2]))
            except ValueError:
                raise ParseError(f"cannot parse {s!r}", path=path, line=lineno) from None
    u = np.asarray(us, dtype=np.int64)
    v = np.asarray(vs, dtype=np.int64)
    w = np.asarray(ws, dtype=float) if weighted else None
    return u, v, w


def _read_coords(path: Path) -> dict[int, tuple[float, float]]:
    coords = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if parts[0] == "v":  # DIMACS .co lines
                parts = parts[1:]
            try:
                coords[int(parts[0])] = (float(parts[1]), float(parts[2]))
            except (ValueError, IndexError):
                raise ParseError(f"cannot parse coordinate line {s!r}", path=path, line=lineno) from None
    return coords


def _dedupe(u, v, w, policy):
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    if policy == "error" or lo.size == 0:
        return lo, hi, w
    order = np.lexsort((w, hi, lo)) if policy != "first" else np.lexsort((hi, lo))
    lo, hi, w = lo[order], hi[order], w[order]
    start = np.ones(lo.size, dtype=bool)
    start[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
    if policy == "max":
        end = np.roll(start, -1)
        end[-1] = True
        pick = end
    else:
        pick = start
    return lo[pick], hi[pick], w[pick]


def ingest(spec: CorpusSpec) -> WeightedGraph:
    path = Path(spec.path)
    u, v, w = _parse_edges(path, spec.format)
    if u.size == 0:
        raise EmptyGraph(f"{path}: no edges")

    if spec.drop_self_loops:
        keep = u != v
        u, v = u[keep], v[keep]
        w = None if w is None else w[keep]
        if u.size == 0:
            raise EmptyGraph(f"{path}: only self-loops")

    if spec.weight_rule == "cooccurrence":
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        pairs, counts = np.unique(np.stack([lo, hi], axis=1), axis=0, return_counts=True)
        u, v, w = pairs[:, 0], pairs[:, 1], counts.astype(float)
    elif spec.weight_rule == "euclidean":
        coords = _read_coords(Path(spec.coords_path))
        try:
            pu = np.array([coords[int(x)] for x in u])
            pv = np.array([coords[int(x)] for x in v])
        except KeyError as exc:
            raise ParseError(f"no coordinates for vertex {exc.args[0]}", path=spec.coords_path) from None
        w = np.hypot(*(pu - pv).T)
    elif w is None:
        w = np.ones(u.size)

    u, v, w = _dedupe(u, v, w, spec.dedupe)

    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise ParseError("weights must be positive and finite", path=path)
    scale = 1.0
    if np.any(w != np.floor(w)):
        if spec.eps is None:
            raise ParseError("weights are not integers; pass eps to round them", path=path)
        w = round_weights(w, spec.eps)
        scale = 1.0 / spec.eps
    else:
        w = w.astype(np.int64)
    if spec.cap is not None:
        w = np.minimum(w, int(spec.cap))

    ids = np.unique(np.concatenate([u, v]))
    lu = np.searchsorted(ids, u)
    lv = np.searchsorted(ids, v)
    if spec.largest_component:
        n0 = ids.size
        adj = coo_matrix((np.ones(lu.size, dtype=np.int8), (lu, lv)), shape=(n0, n0))
        _, comp = connected_components(adj, directed=False)
        big = np.argmax(np.bincount(comp))
        inside = comp == big
        keep = inside[lu]
        remap = np.cumsum(inside) - 1
        lu, lv, w = remap[lu[keep]], remap[lv[keep]], w[keep]
        ids = ids[inside]
    return build_graph(u=lu, v=lv, w=w, n=ids.size, labels=ids, weight_scale=scale)


def serialize(graph: WeightedGraph, path: str | os.PathLike) -> None:
    """Write the graph as a ``u v w`` edge list with a comment header."""
    u, v, w = graph.edges()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# n={graph.n} m={graph.m} W={graph.W}\n")
        np.savetxt(fh, np.stack([u, v, w], axis=1), fmt="%d")


def write_cache(graph: WeightedGraph, path: str | os.PathLike) -> None:
    header = json.dumps({"n": graph.n, "W": graph.W, "weight_scale": graph.weight_scale,
                         "labels": graph.labels is not None}).encode()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<Q", len(header)))
        fh.write(header)
        for arr in (graph.indptr, graph.nbr, graph.wts):
            np.save(fh, arr, allow_pickle=False)
        if graph.labels is not None:
            np.save(fh, np.asarray(graph.labels), allow_pickle=False)


def read_cache(path: str | os.PathLike) -> WeightedGraph:
    with open(path, "rb") as fh:
        if fh.read(len(MAGIC)) != MAGIC:
            raise ParseError("not a graph cache (bad magic)", path=path)
        (size,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(size))
        indptr = np.load(fh, allow_pickle=False)
        nbr = np.load(fh, allow_pickle=False)
        wts = np.load(fh, allow_pickle=False)
        labels = np.load(fh, allow_pickle=False) if header["labels"] else None
    n = int(header["n"])
    deg = np.diff(indptr)
    src = np.repeat(np.arange(n, dtype=np.int64), deg)
    keep = src < nbr
    return build_graph(u=src[keep], v=nbr[keep], w=wts[keep], n=n, labels=labels,
                       weight_scale=header["weight_scale"])


def load_graph(path: str | os.PathLike, spec: CorpusSpec | None = None, *, write_cache_for_large: bool = True) -> WeightedGraph:
    """Load a cache file, a fresh cache beside a text file, or the text file itself."""
    path = Path(path)
    with open(path, "rb") as fh:
        if fh.read(len(MAGIC)) == MAGIC:
            return read_cache(path)
    cache = path.with_name(path.name + CACHE_SUFFIX)
    if spec is None and cache.exists() and cache.stat().st_mtime >= path.stat().st_mtime:
        return read_cache(cache)
    graph = ingest(spec or CorpusSpec(path))
    if spec is None and write_cache_for_large and graph.m >= CACHE_MIN_EDGES:
        try:
            write_cache(graph, cache)
        except OSError:
            pass
    return graph
