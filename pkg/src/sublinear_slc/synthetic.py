"""Random connected test graphs, built with vectorised numpy.

``cycle_with_chords`` puts a Hamiltonian cycle through a random vertex order
and adds random chords. The cycle guarantees connectivity and the chords raise
the average degree to about ``2 + 2 * chords``.
"""

from __future__ import annotations

import numpy as np

from .graph import WeightedGraph, build_graph


def uniform_weights(rng: np.random.Generator, size: int, W: int) -> np.ndarray:
    return rng.integers(1, W + 1, size=size)


def cooccurrence_weights(rng: np.random.Generator, size: int, W: int, alpha: float = 1.3) -> np.ndarray:
    """Heavy-tailed counts: most pairs co-occur a few times, a few very often."""
    u = 1.0 - rng.random(size)
    return np.minimum(W, np.floor(u ** (-1.0 / alpha))).astype(np.int64)


WEIGHT_LAWS = {"uniform": uniform_weights, "cooccurrence": cooccurrence_weights}


def cycle_with_chords(
    n: int,
    W: int,
    rng: np.random.Generator,
    *,
    chords: float = 1.0,
    weights: str = "uniform",
    local: int | None = None,
) -> WeightedGraph:
    """Cycle over a random order plus about ``chords * n`` extra edges.

    With ``local`` set, chord endpoints are at most ``local`` steps apart along
    the cycle, which gives a road-like graph with long shortest paths.
    The largest weight is forced to appear so ``graph.W == W``.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    order = rng.permutation(n)
    a = order
    b = np.roll(order, -1)
    extra = int(round(chords * n))
    if local:
        pos = rng.integers(0, n, size=extra)
        off = rng.integers(2, local + 1, size=extra)
        ca, cb = order[pos], order[(pos + off) % n]
    else:
        ca = rng.integers(0, n, size=extra)
        cb = rng.integers(0, n, size=extra)
    u = np.concatenate([a, ca])
    v = np.concatenate([b, cb])
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    keep = lo != hi
    lo, hi = lo[keep], hi[keep]
    # first occurrence wins, so every cycle edge survives deduplication
    _, first = np.unique(lo * n + hi, return_index=True)
    first.sort()
    lo, hi = lo[first], hi[first]
    law = WEIGHT_LAWS[weights] if isinstance(weights, str) else weights
    w = np.asarray(law(rng, lo.size, W), dtype=np.int64)
    w[rng.integers(0, w.size)] = W
    return build_graph(u=lo, v=hi, w=w, n=n)
