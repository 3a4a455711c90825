"""Exact spanning trees, component curves, hierarchy costs and profiles.

Everything here reads the whole graph. Costs are returned as Python ints, so
they cannot overflow however large ``n**2 * W`` gets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CurveNotDistanceMode, CurveNotSimilarityMode, Disconnected
from .graph import Mode, WeightedGraph


@dataclass(frozen=True)
class SpanningWeights:
    """Sorted tree weights: ascending for an MST, descending for a MaxST."""

    weights: np.ndarray
    total: int
    maximize: bool


@dataclass(frozen=True)
class ComponentCurve:
    """Component counts of the threshold graphs for ``j = 1..W``.

    ``values[j-1]`` is the number of components of the subgraph with edges of
    weight ``<= j`` (distance) or ``>= j`` (similarity).
    """

    mode: Mode
    values: tuple[int, ...]
    n: int

    @property
    def W(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        """1-based access with the natural boundary values at 0 and W+1."""
        if j == 0 and self.mode is Mode.DISTANCE:
            return self.n
        if j == self.W + 1 and self.mode is Mode.SIMILARITY:
            return self.n
        if not 1 <= j <= self.W:
            raise IndexError(j)
        return self.values[j - 1]


def _require_connected(graph: WeightedGraph) -> None:
    if graph.n == 0 or graph.num_components != 1:
        raise Disconnected(f"graph has {graph.num_components} components; a connected graph is required")


def _sorted_edges(u, v, w, maximize: bool):
    order = np.argsort(-w if maximize else w, kind="stable")
    return u[order], v[order], w[order]


def _sweep(n, u, v, w, maximize: bool):
    u, v, w = _sorted_edges(u, v, w, maximize)
    take = np.zeros(u.shape[0], dtype=np.bool_)
    run_w, run_c, runs = _kernels.kruskal_sweep(n, u, v, w, take)
    return w[take], run_w[:runs], run_c[:runs]


def spanning_weights_from_arrays(n: int, u, v, w, maximize: bool = False) -> np.ndarray:
    """Sorted spanning-forest weights of an explicit edge list.

    Works for real weights too, which the weight-rounding checks rely on.
    """
    w = np.asarray(w)
    tree, _, _ = _sweep(n, np.asarray(u, np.int64), np.asarray(v, np.int64), w, maximize)
    return tree


def kruskal(graph: WeightedGraph, maximize: bool = False) -> SpanningWeights:
    _require_connected(graph)
    u, v, w = graph.edges()
    tree, _, _ = _sweep(graph.n, u, v, w, maximize)
    return SpanningWeights(weights=tree, total=int(tree.sum(dtype=np.int64)), maximize=maximize)


def component_curve(graph: WeightedGraph, mode: Mode | str) -> ComponentCurve:
    """One union-find pass over weight-sorted edges."""
    mode = Mode.parse(mode)
    W, n = graph.W, graph.n
    u, v, w = graph.edges()
    maximize = mode is Mode.SIMILARITY
    _, run_w, run_c = _sweep(n, u, v, w, maximize)
    counts = np.full(W + 2, -1, dtype=np.int64)
    counts[run_w] = run_c
    values = np.empty(W, dtype=np.int64)
    if mode is Mode.DISTANCE:
        last = n
        for j in range(1, W + 1):
            if counts[j] >= 0:
                last = counts[j]
            values[j - 1] = last
    else:
        last = n
        for j in range(W, 0, -1):
            if counts[j] >= 0:
                last = counts[j]
            values[j - 1] = last
    return ComponentCurve(mode=mode, values=tuple(int(x) for x in values), n=n)


def _cost_from_tree(n: int, tree: np.ndarray) -> int:
    coeff = np.arange(n - 1, 0, -1, dtype=object)
    return int(np.dot(coeff, tree.astype(object))) if tree.size else 0


def exact_cost_distance(graph: WeightedGraph) -> int:
    """sum_i (n - i) * w_i over the ascending MST weights."""
    return _cost_from_tree(graph.n, kruskal(graph).weights)


def exact_cost_similarity(graph: WeightedGraph) -> int:
    """sum_i (n - i) * w_i over the descending MaxST weights."""
    return _cost_from_tree(graph.n, kruskal(graph, maximize=True).weights)


def exact_cost(graph: WeightedGraph, mode: Mode | str) -> int:
    if Mode.parse(mode) is Mode.DISTANCE:
        return exact_cost_distance(graph)
    return exact_cost_similarity(graph)


def _check_mode(curve: ComponentCurve, mode: Mode) -> None:
    if curve.mode is not mode:
        cls = CurveNotDistanceMode if mode is Mode.DISTANCE else CurveNotSimilarityMode
        raise cls(f"expected a {mode.value} curve, got {curve.mode.value}")


def formula_cost_distance(curve: ComponentCurve, n: int) -> int:
    """n(n-1)/2 + 1/2 * sum_{j<W} (c_j^2 - c_j)."""
    _check_mode(curve, Mode.DISTANCE)
    acc = sum(c * c - c for c in curve.values[:-1])
    return n * (n - 1) // 2 + acc // 2


def formula_cost_similarity(curve: ComponentCurve, n: int) -> int:
    """sum_j (c_j + n - 1)(n - c_j) / 2."""
    _check_mode(curve, Mode.SIMILARITY)
    return sum((c + n - 1) * (n - c) for c in curve.values) // 2


def mst_weight_from_curve(curve: ComponentCurve, n: int) -> int:
    _check_mode(curve, Mode.DISTANCE)
    return n - curve.W + sum(curve.values[:-1])


def maxst_weight_from_curve(curve: ComponentCurve, n: int) -> int:
    _check_mode(curve, Mode.SIMILARITY)
    return sum(n - c for c in curve.values)


def exact_profile(graph: WeightedGraph, mode: Mode | str) -> np.ndarray:
    """``cost_k`` for ``k = 1..n`` as an int64 array (index ``k-1``).

    cost_k is the total weight of the n-k lightest (distance) or heaviest
    (similarity) tree edges, that is, the spanning tree minus its k-1 edges
    that single linkage never merges.
    """
    mode = Mode.parse(mode)
    tree = kruskal(graph, maximize=mode is Mode.SIMILARITY).weights
    prefix = np.zeros(graph.n, dtype=np.int64)
    np.cumsum(tree, out=prefix[1:])
    return prefix[::-1].copy()


def profile_total(profile: np.ndarray) -> int:
    return int(sum(int(x) for x in profile))


def profile_at_curve_distance(curve: ComponentCurve, j: int) -> int:
    """cost_k at k = c_j, from the curve alone: n + sum_{i<j} c_i - c_j * j."""
    _check_mode(curve, Mode.DISTANCE)
    n = curve.n
    return n + sum(curve.values[: j - 1]) - curve[j] * j


def profile_at_curve_similarity(curve: ComponentCurve, j: int) -> int:
    """cost_k at k = c_j: sum_{i>j} (n - c_i) + (n - c_j) * j."""
    _check_mode(curve, Mode.SIMILARITY)
    n = curve.n
    return sum(n - c for c in curve.values[j:]) + (n - curve[j]) * j
