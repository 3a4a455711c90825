"""Sampling estimators for component counts and for D = n - c.

``estimate_cc`` samples r start vertices and runs a coin-gated doubling BFS
from each. A start vertex whose component is fully explored within the caps
contributes ``deg(u) * 2**t / vol``, which is unbiased for one over the
component size once the coin probabilities are accounted for. Scaling the
mean by ``n`` estimates the number of components.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import EpsOutOfRange, KTooSmall
from .graph import AccessSession, Mode, ThresholdView

MEDIAN_CONSTANT = 8
MIN_K_FOR_D = 10

_ALL_HEADS = np.uint64(np.iinfo(np.uint64).max)


def _ceil(x: float) -> int:
    # guards against 64*10/0.01 = 64000.00000000001 style float noise
    return max(1, math.ceil(x - 1e-9))


def median_trials(delta: float) -> int:
    """ceil(8 ln(1/delta)) trials, forced odd, at least one."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    t = max(1, math.ceil(MEDIAN_CONSTANT * math.log(1.0 / delta)))
    return t if t % 2 else t + 1


@dataclass(frozen=True)
class EstimatorParams:
    """Sample count ``r``, vertex cap ``gamma`` and degree cap ``dcap``.

    ``dcap=None`` means the cap is sampled from the graph on first use (see
    :func:`estimate_degree_cap`).
    """

    eps: float
    k: float
    r: int
    gamma: int
    dcap: int | None = None
    delta: float = 0.125
    trials: int = 1

    def __post_init__(self):
        if not 0.0 < self.eps < 1.0:
            raise EpsOutOfRange(f"eps must lie in (0, 1), got {self.eps}")
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.r < 1 or self.gamma < 1 or self.trials < 1:
            raise ValueError("r, gamma and trials must be positive")
        if self.dcap is not None and self.dcap < 1:
            raise ValueError("dcap must be positive")

    @classmethod
    def theory(cls, eps: float, k: float, d: float | None = None, delta: float = 0.125) -> "EstimatorParams":
        """Settings that carry the worst-case guarantee: r = 64k/eps^2, gamma = 4k/eps, dcap = d*gamma."""
        if not 0.0 < eps < 1.0:
            raise EpsOutOfRange(f"eps must lie in (0, 1), got {eps}")
        gamma = _ceil(4 * k / eps)
        return cls(
            eps=eps,
            k=k,
            r=_ceil(64 * k / eps**2),
            gamma=gamma,
            dcap=None if d is None else _ceil(d * gamma),
            delta=delta,
            trials=median_trials(delta),
        )

    @classmethod
    def practical(
        cls,
        r: int,
        k: float,
        eps: float | None = None,
        dcap: int | None = None,
        trials: int = 1,
        delta: float = 0.125,
    ) -> "EstimatorParams":
        """Caller-chosen r with gamma = sqrt(r*k) and a sampled degree cap."""
        if eps is None:
            eps = practical_eps(r, k)
        return cls(eps=eps, k=k, r=int(r), gamma=_ceil(math.sqrt(r * k)), dcap=dcap, delta=delta, trials=trials)

    def with_dcap(self, dcap: int) -> "EstimatorParams":
        return replace(self, dcap=int(dcap))


def practical_eps(r: int, k: float) -> float:
    """Accuracy that r samples buy at threshold parameter k: sqrt(k/r), kept below 1."""
    return min(math.sqrt(k / r), 0.99)


@dataclass(frozen=True)
class CcEstimate:
    value: float
    raw: float
    params: EstimatorParams
    trials: tuple[float, ...] = ()
    entries_scanned: int = 0


class DBranch(str, enum.Enum):
    ISOLATED = "isolated"
    COMPONENT = "component"


@dataclass(frozen=True)
class DEstimate:
    value: float
    raw: float
    branch: DBranch
    params: EstimatorParams
    n_nonisolated: float = 0.0
    c_prime: float = 0.0
    c_hat: float = 0.0
    trials: tuple[float, ...] = field(default=())
    entries_scanned: int = 0


def estimate_degree_cap(session: AccessSession, gamma: int, rng: np.random.Generator) -> int:
    """Largest degree among 2*gamma vertices drawn with replacement.

    With high probability about ``n/(4 gamma)`` vertices have a larger degree,
    so few components are lost to the cap while the BFS cost stays bounded.
    """
    if gamma < 1:
        raise ValueError("gamma must be positive")
    g = session.graph
    picks = rng.integers(0, g.n, size=2 * int(gamma))
    degs = g.degrees[picks]
    session.charge(int(degs.sum()), int((degs * (degs + 1) // 2).sum()))
    return max(1, int(degs.max()))


def _resolve_dcap(view: ThresholdView, params: EstimatorParams, rng) -> int:
    if params.dcap is not None:
        return params.dcap
    return estimate_degree_cap(view.session, params.gamma, rng)


def beta_draws(
    view: ThresholdView,
    samples: np.ndarray,
    coins: np.ndarray,
    gamma: int,
    dcap: int,
    *,
    kernel=None,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-sample BFS outcomes for explicit start vertices and coin words.

    Returns ``(beta, isolated)`` and charges the session. ``kernel`` lets tests
    run the uncompiled version.
    """
    g = view.graph
    samples = np.ascontiguousarray(samples, dtype=np.int64)
    coins = np.ascontiguousarray(coins, dtype=np.uint64)
    beta = np.zeros(samples.shape[0], dtype=np.float64)
    iso = np.zeros(samples.shape[0], dtype=np.bool_)
    fn = kernel or _kernels.doubling_bfs
    unit, prefix = fn(g.indptr, g.nbr, g.wts, int(view.j), bool(view.at_least), samples, coins,
                      int(gamma), int(dcap), beta, iso)
    view.session.charge(int(unit), int(prefix))
    return beta, iso


def all_heads(size: int) -> np.ndarray:
    """Coin words that never come up tails. For deterministic tests."""
    return np.full(size, _ALL_HEADS, dtype=np.uint64)


def _draw(rng: np.random.Generator, n: int, r: int) -> tuple[np.ndarray, np.ndarray]:
    samples = rng.integers(0, n, size=r)
    coins = rng.integers(0, np.iinfo(np.uint64).max, size=r, dtype=np.uint64, endpoint=True)
    return samples, coins


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def estimate_cc(view: ThresholdView, params: EstimatorParams, rng: np.random.Generator) -> CcEstimate:
    """One run of the doubling-BFS component counter."""
    g = view.graph
    before = view.session.entries_scanned
    dcap = _resolve_dcap(view, params, rng)
    samples, coins = _draw(rng, g.n, params.r)
    beta, _ = beta_draws(view, samples, coins, params.gamma, dcap)
    raw = g.n * float(beta.sum()) / params.r
    return CcEstimate(
        value=_clamp(raw, 1.0, g.n),
        raw=raw,
        params=params,
        trials=(raw,),
        entries_scanned=view.session.entries_scanned - before,
    )


def estimate_cc_median(view: ThresholdView, params: EstimatorParams, rng: np.random.Generator) -> CcEstimate:
    """Median of ``params.trials`` independent runs, clamped to [1, n]."""
    before = view.session.entries_scanned
    raws = [estimate_cc(view, params, child).raw for child in rng.spawn(params.trials)]
    raw = float(np.median(raws))
    return CcEstimate(
        value=_clamp(raw, 1.0, view.graph.n),
        raw=raw,
        params=params,
        trials=tuple(raws),
        entries_scanned=view.session.entries_scanned - before,
    )


def estimate_D_sim(view: ThresholdView, params: EstimatorParams, rng: np.random.Generator) -> DEstimate:
    """Estimate D = n - c for a similarity view.

    When fewer than half the vertices touch a view edge, D is read off the
    non-isolated part (count minus its components); otherwise as n minus the
    full component estimate. Two disjoint sample sets are used.
    """
    if params.k < MIN_K_FOR_D:
        raise KTooSmall(f"k must be at least {MIN_K_FOR_D}, got {params.k}")
    if view.mode is not Mode.SIMILARITY:
        raise ValueError("D estimation is defined on similarity (at-least) views")
    g = view.graph
    n, r = g.n, params.r
    before = view.session.entries_scanned
    dcap = _resolve_dcap(view, params, rng)

    first = rng.integers(0, n, size=r)
    x = np.zeros(r, dtype=np.bool_)
    unit, prefix = _kernels.nonisolated(g.indptr, g.wts, int(view.j), True, first, x)
    view.session.charge(int(unit), int(prefix))
    n_prime = n * float(x.sum()) / r

    samples, coins = _draw(rng, n, r)
    beta, iso = beta_draws(view, samples, coins, params.gamma, dcap)
    c_hat = n * float(beta.sum()) / r
    c_prime = n * float(beta[~iso].sum()) / r

    if n_prime < 0.5 * n:
        raw, branch = n_prime - c_prime, DBranch.ISOLATED
    else:
        raw, branch = n - c_hat, DBranch.COMPONENT
    return DEstimate(
        value=_clamp(raw, 0.0, n - 1),
        raw=raw,
        branch=branch,
        params=params,
        n_nonisolated=n_prime,
        c_prime=c_prime,
        c_hat=c_hat,
        trials=(raw,),
        entries_scanned=view.session.entries_scanned - before,
    )


def estimate_D_median(view: ThresholdView, params: EstimatorParams, rng: np.random.Generator) -> DEstimate:
    before = view.session.entries_scanned
    runs = [estimate_D_sim(view, params, child) for child in rng.spawn(params.trials)]
    raws = np.array([d.raw for d in runs])
    mid = runs[int(np.argsort(raws, kind="stable")[len(runs) // 2])]
    return replace(
        mid,
        value=_clamp(mid.raw, 0.0, view.graph.n - 1),
        trials=tuple(raws.tolist()),
        entries_scanned=view.session.entries_scanned - before,
    )
