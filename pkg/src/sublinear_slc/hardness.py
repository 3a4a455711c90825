"""Path instances whose cost is hard to pin down by sampling.

A path over all n vertices gets weight-W edges at rate ``q(1 + eps)`` in the
first family and ``q(1 - eps)`` in the second, with every other edge of
weight 1. The two families differ in total cost by a constant factor, but
telling them apart needs many samples. Padding edges raise the average degree
to ``d`` without changing the spanning-tree weights.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParamOutOfTheoremRange
from .graph import Mode, WeightedGraph, build_graph, permute_adjacency


@dataclass(frozen=True)
class HardInstance:
    graph: WeightedGraph
    family: int
    mode: Mode
    T_W: int
    q: float
    eps_lb: float
    W: int


def promotion_rate(W: int, mode: Mode) -> float:
    return 1 / math.sqrt(W - 1) if mode is Mode.DISTANCE else 1 / (W - 1)


def eps_lower_cutoff(n: int, W: int, mode: Mode) -> float:
    if mode is Mode.DISTANCE:
        return W**0.25 / math.sqrt(40 * n)
    return math.sqrt(W / (40 * n))


def _check(n, W, eps_lb, d, mode):
    if n < 2:
        raise ParamOutOfTheoremRange("need n >= 2")
    if mode is Mode.DISTANCE and W <= 1:
        raise ParamOutOfTheoremRange("distance instances need W > 1")
    if mode is Mode.SIMILARITY and W <= 10:
        raise ParamOutOfTheoremRange("similarity instances need W > 10")
    lo = eps_lower_cutoff(n, W, mode)
    if not lo < eps_lb < 0.5:
        raise ParamOutOfTheoremRange(f"eps_lb must lie in ({lo:.4g}, 0.5), got {eps_lb}")
    if promotion_rate(W, mode) > 0.5:
        raise ParamOutOfTheoremRange(f"W={W} gives a promotion rate above 1/2")
    if d < 2 - 2 / n - 1e-12 or d > n - 1:
        raise ParamOutOfTheoremRange(f"average degree must lie in [2 - 2/n, n - 1], got {d}")


def _pad(n: int, u: list, v: list, target_m: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Greedily join the two lowest-degree vertices until ``target_m`` edges.

    Ties are broken by a random priority. A partner may sit one degree above
    the minimum only when nothing else is at the minimum, which keeps the
    spread of degrees at one. When every admissible partner is already a
    neighbour, an existing padding edge (x, y) is switched to (a, x), (b, y).
    """
    adj = [set() for _ in range(n)]
    for a, b in zip(u, v):
        adj[a].add(b)
        adj[b].add(a)
    deg = [len(s) for s in adj]
    count = [0] * (n + 1)
    for x in deg:
        count[x] += 1
    heap = [(deg[x], rng.random(), x) for x in range(n)]
    heapq.heapify(heap)
    pads: list[tuple[int, int]] = []
    m = len(u)

    def bump(x):
        count[deg[x]] -= 1
        deg[x] += 1
        count[deg[x]] += 1
        heapq.heappush(heap, (deg[x], rng.random(), x))

    def pop_current():
        while True:
            d, _, x = heapq.heappop(heap)
            if d == deg[x]:
                return x

    while m < target_m:
        a = pop_current()
        limit = deg[a] if count[deg[a]] > 1 else deg[a] + 1
        skipped = []
        b = None
        while heap:
            d, pr, x = heapq.heappop(heap)
            if d != deg[x]:
                continue
            if d > limit:
                skipped.append((d, pr, x))
                break
            if x not in adj[a]:
                b = x
                break
            skipped.append((d, pr, x))
        for item in skipped:
            heapq.heappush(heap, item)
        if b is not None:
            adj[a].add(b)
            adj[b].add(a)
            pads.append((a, b))
            m += 1
            bump(a)
            bump(b)
            continue
        partners = [x for d, _, x in skipped if d <= limit]
        if not partners or not _switch(a, partners[0], adj, pads, rng):
            raise ParamOutOfTheoremRange("padding cannot reach the degree target")
        b = partners[0]
        m += 1
        bump(a)
        bump(b)
    return pads


def _switch(a, b, adj, pads, rng) -> bool:
    """Replace a padding edge (x, y) by (a, x) and (b, y). Degrees of x, y are unchanged."""
    order = rng.permutation(len(pads))
    for idx in order.tolist():
        x, y = pads[idx]
        for x, y in ((x, y), (y, x)):
            if len({a, b, x, y}) < 4 or x in adj[a] or y in adj[b]:
                continue
            adj[x].discard(y)
            adj[y].discard(x)
            adj[a].add(x)
            adj[x].add(a)
            adj[b].add(y)
            adj[y].add(b)
            pads[idx] = (a, x)
            pads.append((b, y))
            return True
    return False


def gen_hard_instance(
    n: int,
    W: int,
    eps_lb: float,
    d: float,
    mode: Mode | str,
    family: int,
    rng: np.random.Generator,
) -> HardInstance:
    """Draw one instance from family 0 (more heavy edges) or family 1 (fewer).

    Vertex labels are a random permutation, so the path is hidden, and every
    adjacency list is shuffled. ``d = 2 - 2/n`` means no padding at all.
    """
    mode = Mode.parse(mode)
    if family not in (0, 1):
        raise ValueError("family must be 0 or 1")
    _check(n, W, eps_lb, d, mode)
    q = promotion_rate(W, mode)
    rate = q * (1 + eps_lb if family == 0 else 1 - eps_lb)
    heavy = rng.random(n - 1) < rate
    order = rng.permutation(n)
    pu, pv = order[:-1], order[1:]
    pw = np.where(heavy, W, 1)

    target_m = int(round(d * n / 2))
    if target_m > n - 1:
        pads = _pad(n, pu.tolist(), pv.tolist(), target_m, rng)
        xu = [a for a, _ in pads]
        xv = [b for _, b in pads]
        pad_w = W if mode is Mode.DISTANCE else 1
        pu = np.concatenate([pu, np.asarray(xu, dtype=np.int64)])
        pv = np.concatenate([pv, np.asarray(xv, dtype=np.int64)])
        pw = np.concatenate([pw, np.full(len(xu), pad_w)])
    graph = permute_adjacency(build_graph(u=pu, v=pv, w=pw, n=n), rng)
    return HardInstance(graph=graph, family=family, mode=mode, T_W=int(heavy.sum()), q=q, eps_lb=eps_lb, W=W)


def closed_form_cost(instance: HardInstance) -> int:
    n, W, T = instance.graph.n, instance.W, instance.T_W
    if instance.mode is Mode.DISTANCE:
        return (n * (n - 1) + (W - 1) * (T * T + T)) // 2
    return (n * (n - 1) - (W - 1) * T * T + (W - 1) * (2 * n - 1) * T) // 2


@dataclass(frozen=True)
class SeparationBounds:
    """Cost thresholds that typical family-0 and family-1 draws fall on each side of."""

    lower_family0: float
    upper_family1: float
    margin: float

    @property
    def gap(self) -> float:
        return self.lower_family0 - self.upper_family1


def separation_bounds(n: int, W: int, eps_lb: float, mode: Mode | str) -> SeparationBounds:
    """Bounds that hold when T_W concentrates within a factor of its mean.

    Distance: family-0 costs sit above the value at ``T_W = (n-1)q(1 + eps/4)``
    and family-1 costs below the value at ``(n-1)q(1 - eps/2)``; the gap is at
    least ``eps * (n-1)^2 / 2``. Similarity uses the analogous bracket with
    margin ``eps * n^2 / 4``.
    """
    mode = Mode.parse(mode)
    e = eps_lb
    base = n * (n - 1) / 2
    if mode is Mode.DISTANCE:
        s = math.sqrt(W - 1)
        lo0 = base + (n - 1) ** 2 / 2 * (1 + e / 4) ** 2 + (n - 1) * s / 2 * (1 + e / 4)
        hi1 = base + (n - 1) ** 2 / 2 * (1 - e / 2) ** 2 + (n - 1) * s / 2 * (1 - e / 2)
        return SeparationBounds(lo0, hi1, e * (n - 1) ** 2 / 2)
    mu = (n - 1) / (W - 1)
    lo0 = (base - (W - 1) / 2 * (mu * (1 + e) * (1 + e / 2)) ** 2
           + (W - 1) * (2 * n - 1) / 2 * mu * (1 + e) * (1 - e / 2))
    hi1 = (base - (W - 1) / 2 * (mu * (1 - e) * (1 - e / 2)) ** 2
           + (W - 1) * (2 * n - 1) / 2 * mu * (1 - e) * (1 + e / 2))
    return SeparationBounds(lo0, hi1, e * n * n / 4)
