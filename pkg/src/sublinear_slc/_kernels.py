"""Compiled inner loops.

All randomness is drawn by the caller and passed in, so each kernel is a pure
function of its arguments. Each kernel keeps its plain-Python version as
``kernel.py_func`` when numba is available, and the tests check that the two
agree.
"""

from __future__ import annotations

import os

import numpy as np

try:
    if os.environ.get("SLC_DISABLE_JIT"):
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba

    def njit(*args, **kwargs):
        def wrap(fn):
            fn.py_func = fn
            return fn

        if args and callable(args[0]):
            return wrap(args[0])
        return wrap


MAX_FLIPS = 62


@njit(cache=True, nogil=True)
def doubling_bfs(indptr, nbr, wts, thr, at_least, samples, coins, gamma, dcap, out_beta, out_isolated):
    """Run the coin-gated doubling BFS from every sampled vertex.

    For sample ``s`` with start vertex ``u`` the full list of ``u`` is read
    for free. If ``u`` has no neighbour in the view, ``beta = 1``. Otherwise
    each round consumes one fair coin (bit ``f`` of ``coins[s]``). Tails gives
    ``beta = 0``. Heads doubles the entry budget to ``deg(u) * 2**f`` and the
    BFS resumes where it stopped. Once the component is exhausted,
    ``beta = deg(u) * 2**f / entries``. Reaching ``gamma`` discovered vertices,
    or starting to scan a vertex of degree above ``dcap``, gives ``beta = 0``.

    Returns ``(unit_entries, prefix_charge)``.
    """
    n = indptr.shape[0] - 1
    stamp = np.zeros(n, dtype=np.int64)
    qcap = n if gamma > n else gamma + 1
    queue = np.empty(qcap, dtype=np.int64)
    unit = 0
    prefix = 0
    for s in range(samples.shape[0]):
        u = samples[s]
        mark = s + 1
        lo = indptr[u]
        du = indptr[u + 1] - lo
        unit += du
        prefix += du * (du + 1) // 2
        stamp[u] = mark
        visited = 1
        qhead = 0
        qtail = 0
        bad = du > dcap
        for p in range(du):
            w = wts[lo + p]
            ok = w >= thr if at_least else w <= thr
            if ok:
                x = nbr[lo + p]
                if stamp[x] != mark:
                    stamp[x] = mark
                    visited += 1
                    if visited >= gamma:
                        bad = True
                        break
                    queue[qtail] = x
                    qtail += 1
        if visited == 1:
            out_beta[s] = 1.0
            out_isolated[s] = True
            continue
        out_isolated[s] = False
        out_beta[s] = 0.0
        if bad:
            continue

        scanned = du
        cur = -1
        cur_lo = 0
        cur_deg = 0
        pos = 0
        flips = 0
        word = coins[s]
        while True:
            if flips >= MAX_FLIPS:
                break
            heads = (word >> np.uint64(flips)) & np.uint64(1)
            flips += 1
            if heads == 0:
                break
            budget = du << flips
            while scanned < budget:
                if cur < 0:
                    if qhead == qtail:
                        break
                    cur = queue[qhead]
                    qhead += 1
                    cur_lo = indptr[cur]
                    cur_deg = indptr[cur + 1] - cur_lo
                    pos = 0
                    if cur_deg > dcap:
                        bad = True
                        break
                    if cur_deg == 0:
                        cur = -1
                        continue
                w = wts[cur_lo + pos]
                x = nbr[cur_lo + pos]
                pos += 1
                scanned += 1
                unit += 1
                prefix += pos
                ok = w >= thr if at_least else w <= thr
                if ok and stamp[x] != mark:
                    stamp[x] = mark
                    visited += 1
                    if visited >= gamma:
                        bad = True
                        break
                    queue[qtail] = x
                    qtail += 1
                if pos == cur_deg:
                    cur = -1
            if bad:
                break
            if cur < 0 and qhead == qtail:
                out_beta[s] = (du * 2.0**flips) / scanned
                break
    return unit, prefix


@njit(cache=True, nogil=True)
def nonisolated(indptr, wts, thr, at_least, samples, out_x):
    """Mark sampled vertices with at least one view edge. Reads whole lists."""
    unit = 0
    prefix = 0
    for s in range(samples.shape[0]):
        u = samples[s]
        lo = indptr[u]
        du = indptr[u + 1] - lo
        unit += du
        prefix += du * (du + 1) // 2
        hit = False
        for p in range(du):
            w = wts[lo + p]
            if (w >= thr) if at_least else (w <= thr):
                hit = True
                break
        out_x[s] = hit
    return unit, prefix


@njit(cache=True, nogil=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True, nogil=True)
def kruskal_sweep(n, us, vs, ws, take):
    """Union-find sweep over edges already sorted by weight.

    Sets ``take[e]`` for tree edges. Returns the component count after each
    maximal run of equal weights as ``(run_weights, run_counts, n_runs)``.
    Path compression plus union by size.
    """
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    m = us.shape[0]
    run_w = np.empty_like(ws)
    run_c = np.empty(m, dtype=np.int64)
    runs = 0
    comps = n
    for e in range(m):
        a = _find(parent, us[e])
        b = _find(parent, vs[e])
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            comps -= 1
            take[e] = True
        if e == m - 1 or ws[e + 1] != ws[e]:
            run_w[runs] = ws[e]
            run_c[runs] = comps
            runs += 1
    return run_w, run_c, runs
