"""Graph generators and independent reference computations for the tests."""

from __future__ import annotations

import math

import networkx as nx
import numpy as np

from sublinear_slc.graph import WeightedGraph, build_graph


def random_connected(rng: np.random.Generator, n: int, W: int, p: float) -> WeightedGraph:
    """Random spanning tree plus G(n, p) extras, integer weights in [1, W]."""
    edges = {}
    perm = rng.permutation(n)
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[rng.integers(0, i)])
        edges[(min(a, b), max(a, b))] = int(rng.integers(1, W + 1))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in edges and rng.random() < p:
                edges[(a, b)] = int(rng.integers(1, W + 1))
    return build_graph([(a, b, w) for (a, b), w in edges.items()], n=n)


def to_nx(graph: WeightedGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(graph.n))
    u, v, w = graph.edges()
    G.add_weighted_edges_from(zip(u.tolist(), v.tolist(), w.tolist()))
    return G


def nx_threshold(graph: WeightedGraph, j: int, at_least: bool) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(graph.n))
    u, v, w = graph.edges()
    keep = w >= j if at_least else w <= j
    G.add_edges_from(zip(u[keep].tolist(), v[keep].tolist()))
    return G


def nx_curve(graph: WeightedGraph, at_least: bool) -> list[int]:
    return [nx.number_connected_components(nx_threshold(graph, j, at_least)) for j in range(1, graph.W + 1)]


def slc_merge_weights(graph: WeightedGraph, maximize: bool) -> list[int]:
    """Run single linkage literally: always merge the two closest clusters.

    Quadratic in everything; only for tiny graphs.
    """
    cluster = list(range(graph.n))
    u, v, w = graph.edges()
    merges = []
    for _ in range(graph.n - 1):
        best = None
        for a, b, x in zip(u.tolist(), v.tolist(), w.tolist()):
            if cluster[a] == cluster[b]:
                continue
            if best is None or (x > best[2] if maximize else x < best[2]):
                best = (a, b, x)
        a, b, x = best
        old, new = cluster[b], cluster[a]
        cluster = [new if c == old else c for c in cluster]
        merges.append(x)
    return merges


def slc_profile(graph: WeightedGraph, maximize: bool) -> list[int]:
    """cost_k = total weight of the merges made before k clusters remain."""
    merges = slc_merge_weights(graph, maximize)
    n = graph.n
    return [sum(merges[: n - k]) for k in range(1, n + 1)]


def c_U(graph: WeightedGraph, j: int, at_least: bool, gamma: int, dcap: int) -> int:
    """Components the capped sampler can finish: singletons, plus small low-degree ones."""
    H = nx_threshold(graph, j, at_least)
    deg = graph.degrees
    total = 0
    for comp in nx.connected_components(H):
        if len(comp) == 1 or (len(comp) < gamma and max(deg[x] for x in comp) <= dcap):
            total += 1
    return total


def forced_heads_beta(graph: WeightedGraph, j: int, at_least: bool, u: int) -> float:
    """beta from a full exploration: d_u 2^t / vol with t = ceil(log2(vol/d_u))."""
    H = nx_threshold(graph, j, at_least)
    comp = nx.node_connected_component(H, u)
    if len(comp) == 1:
        return 1.0
    du = int(graph.degrees[u])
    vol = int(sum(int(graph.degrees[x]) for x in comp))
    t = 0
    while du * 2**t < vol:
        t += 1
    return du * 2**t / vol


def cycle_graph(n: int, w: int = 1) -> WeightedGraph:
    return build_graph([(i, (i + 1) % n, w) for i in range(n)], n=n)


def path_graph(weights) -> WeightedGraph:
    return build_graph([(i, i + 1, int(x)) for i, x in enumerate(weights)])


def star(k: int, w: int = 1) -> WeightedGraph:
    return build_graph([(0, i, w) for i in range(1, k + 1)])


TRIANGLE = [(0, 1, 1), (1, 2, 2), (0, 2, 3)]


def log2ceil(x: int) -> int:
    return math.ceil(math.log2(x)) if x > 1 else 0
