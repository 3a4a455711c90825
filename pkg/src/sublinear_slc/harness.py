"""Trial reports, profile CSVs and the profile-error benchmark."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .distance import app_cost, app_profile
from .errors import SizeGuardError
from .graph import AccessModel, Mode, WeightedGraph
from .results import SuccinctProfile
from .similarity import app_cost_sim, app_profile_sim

SCHEMA_VERSION = 1
DEFAULT_EDGE_BUDGET = 10**8
THREADS_ENV = "SLC_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    return max(1, int(raw)) if raw else 1


@dataclass
class TrialReport:
    """One estimator or exact run.

    ``wall_time`` and ``speedup`` are excluded from :meth:`to_json` when
    ``timing=False``, which makes equal-seed reports byte-identical.
    """

    seed: int | None
    mode: str
    method: str
    estimate: float
    entries_scanned: int
    eps: float | None = None
    r: int | None = None
    theory: bool = False
    access_model: str = AccessModel.UNIT.value
    exact: int | None = None
    relative_error: float | None = None
    num_estimates: int = 0
    exact_fallback: str | None = None
    n: int = 0
    m: int = 0
    W: int = 0
    wall_time: float = field(default=0.0, compare=False)
    speedup: float | None = field(default=None, compare=False)
    schema: int = SCHEMA_VERSION

    def attach_exact(self, value: int, wall_time: float | None = None) -> "TrialReport":
        self.exact = int(value)
        self.relative_error = abs(self.estimate - value) / value if value else 0.0
        if wall_time is not None and self.wall_time > 0:
            self.speedup = wall_time / self.wall_time
        return self

    def to_dict(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("wall_time")
            out.pop("speedup")
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _graph_fields(graph: WeightedGraph) -> dict:
    return {"n": graph.n, "m": graph.m, "W": graph.W}


def run_estimate(
    graph: WeightedGraph,
    mode: Mode | str,
    *,
    eps: float | None = None,
    r: int | None = None,
    theory: bool = False,
    seed: int | None = None,
    access_model: AccessModel | str = AccessModel.UNIT,
    allow_fallback: bool = True,
    max_weight: int | None = None,
    trials: int | None = None,
) -> TrialReport:
    mode = Mode.parse(mode)
    fn = app_cost if mode is Mode.DISTANCE else app_cost_sim
    t0 = time.perf_counter()
    est = fn(graph, eps, r=r, theory=theory, seed=seed, access_model=access_model,
             allow_fallback=allow_fallback, max_weight=max_weight, trials=trials)
    elapsed = time.perf_counter() - t0
    return TrialReport(
        seed=seed,
        mode=mode.value,
        method="theory" if theory else "practical",
        estimate=float(est.value),
        entries_scanned=est.entries_scanned,
        eps=est.eps,
        r=est.r,
        theory=theory,
        access_model=AccessModel.parse(access_model).value,
        num_estimates=est.num_estimates,
        exact_fallback=est.exact_fallback,
        wall_time=elapsed,
        **_graph_fields(graph),
    )


def run_exact(graph: WeightedGraph, mode: Mode | str, access_model: AccessModel | str = AccessModel.UNIT) -> TrialReport:
    """Kruskal baseline. Reads every adjacency entry once."""
    mode = Mode.parse(mode)
    model = AccessModel.parse(access_model)
    t0 = time.perf_counter()
    value = exact.exact_cost(graph, mode)
    elapsed = time.perf_counter() - t0
    deg = graph.degrees
    scanned = int(deg.sum()) if model is AccessModel.UNIT else int((deg * (deg + 1) // 2).sum())
    rep = TrialReport(
        seed=None,
        mode=mode.value,
        method="exact",
        estimate=float(value),
        entries_scanned=scanned,
        access_model=model.value,
        wall_time=elapsed,
        **_graph_fields(graph),
    )
    rep.exact = int(value)
    rep.relative_error = 0.0
    return rep


def _default_grid(profile: SuccinctProfile) -> list[int]:
    n = profile.n
    ks = {1, n}
    for key in profile.keys:
        k = int(np.ceil(key))
        if 1 <= k <= n:
            ks.add(k)
    return sorted(ks)


def profile_rows(
    profile: SuccinctProfile | Sequence[float],
    normalize: bool = False,
    ks: Iterable[int] | None = None,
    dense: bool = False,
) -> tuple[tuple[str, str], list[tuple[float, float]]]:
    """Rows for a profile table, exact (a cost_k sequence) or estimated."""
    if isinstance(profile, SuccinctProfile):
        n = profile.n
        grid = list(range(1, n + 1)) if dense else (sorted(set(ks)) if ks is not None else _default_grid(profile))
        values = [profile.query(k) for k in grid]
        first = profile.query(1)
    else:
        arr = np.asarray(profile)
        n = arr.shape[0]
        grid = list(range(1, n + 1)) if ks is None else sorted(set(ks))
        values = [arr[k - 1].item() for k in grid]
        first = arr[0].item()
    if not normalize:
        return ("k", "cost_k"), list(zip(grid, values))
    denom = first if first else 1
    return ("k_frac", "cost_frac"), [(k / n, v / denom) for k, v in zip(grid, values)]


def emit_profile_csv(
    profile: SuccinctProfile | Sequence[float],
    out,
    normalize: bool = False,
    ks: Iterable[int] | None = None,
    dense: bool = False,
) -> None:
    """Write ``k,cost_k`` (or ``k_frac,cost_frac``) rows to a path or text stream."""
    header, rows = profile_rows(profile, normalize=normalize, ks=ks, dense=dense)
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            _write_rows(fh, header, rows)
    else:
        _write_rows(out, header, rows)


def _write_rows(fh, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def profile_error_ratio(estimate: SuccinctProfile, exact_profile: np.ndarray, total: int) -> float:
    """sum_k |est_k - cost_k| / cost(G)."""
    diff = np.abs(estimate.dense() - exact_profile.astype(float))
    return float(diff.sum() / total)


@dataclass(frozen=True)
class BenchRow:
    mode: str
    r: int
    seed: int
    ratio: float
    entries_scanned: int


def bench_profile_error(
    graph: WeightedGraph,
    mode: Mode | str,
    r_list: Sequence[int],
    seeds: Sequence[int],
    *,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
    workers: int | None = None,
    eps: float | None = None,
) -> list[BenchRow]:
    """Accumulated profile error of the practical estimator for every (r, seed).

    Refuses to run when the exact baseline would read more than
    ``edge_budget`` edges.
    """
    mode = Mode.parse(mode)
    if graph.m > edge_budget:
        raise SizeGuardError(f"graph has {graph.m} edges, above the exact-baseline budget of {edge_budget}")
    truth = exact.exact_profile(graph, mode)
    total = exact.profile_total(truth)
    fn = app_profile if mode is Mode.DISTANCE else app_profile_sim

    def one(job):
        r, seed = job
        prof = fn(graph, eps, r=r, seed=seed, allow_fallback=False)
        return BenchRow(mode.value, int(r), int(seed), profile_error_ratio(prof, truth, total),
                        prof.estimate.entries_scanned)

    jobs = [(r, s) for r in r_list for s in seeds]
    with ThreadPoolExecutor(max_workers=workers or worker_count()) as pool:
        return list(pool.map(one, jobs))


def summarize_bench(rows: Sequence[BenchRow]) -> list[dict]:
    """Mean and spread of the error ratio per r, in increasing r."""
    out = []
    for r in sorted({row.r for row in rows}):
        ratios = np.array([row.ratio for row in rows if row.r == r])
        out.append({
            "mode": rows[0].mode,
            "r": r,
            "seeds": int(ratios.size),
            "mean_ratio": float(ratios.mean()),
            "std_ratio": float(ratios.std(ddof=1)) if ratios.size > 1 else 0.0,
        })
    return out


def bench_csv(rows: Sequence[BenchRow], summary: bool = True) -> str:
    buf = io.StringIO()
    if summary:
        table = summarize_bench(rows)
        fields = ["mode", "r", "seeds", "mean_ratio", "std_ratio"]
    else:
        table = [asdict(row) for row in rows]
        fields = ["mode", "r", "seed", "ratio", "entries_scanned"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(table)
    return buf.getvalue()
