"""Result containers shared by both modes, with the profile lookups."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import KOutOfRange
from .graph import Mode
from .search import BucketIndexVector, DiscretizationScheme


@dataclass(frozen=True)
class CostEstimate:
    """Estimated total hierarchy cost.

    ``exact_fallback`` names the reason when the graph was solved exactly
    instead (in that case ``value`` is the exact cost).
    """

    value: float
    mode: Mode
    eps: float
    entries_scanned: int
    num_estimates: int
    buckets: BucketIndexVector | None
    scheme: DiscretizationScheme | None
    exact_fallback: str | None = None
    r: int | None = None
    theory: bool = False
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def num_cj_estimated(self) -> int:
        return self.num_estimates


@dataclass(frozen=True)
class SuccinctProfile:
    """Piecewise-constant profile estimate, one value per endpoint.

    Distance profiles are keyed at ``k = B_i`` (keys decreasing in i),
    similarity profiles at ``k = n - B_i`` (keys increasing in i).
    """

    mode: Mode
    n: int
    endpoints: tuple[float, ...]
    values: tuple[float, ...]
    estimate: CostEstimate | None = None

    @property
    def t(self) -> int:
        return len(self.endpoints)

    @property
    def keys(self) -> tuple[float, ...]:
        if self.mode is Mode.DISTANCE:
            return self.endpoints
        return tuple(self.n - b for b in self.endpoints)

    def locate(self, k: int) -> tuple[int, int]:
        """1-based endpoint index answering ``k``, and the comparisons spent."""
        if not 1 <= k <= self.n:
            raise KOutOfRange(f"k must lie in [1, {self.n}], got {k}")
        B = self.endpoints
        lo, hi, comps = 1, self.t, 0
        if self.mode is Mode.DISTANCE:
            # smallest p with B_p <= k; B_t <= 1 <= k so p exists
            while lo < hi:
                mid = (lo + hi) // 2
                comps += 1
                if B[mid - 1] <= k:
                    hi = mid
                else:
                    lo = mid + 1
        else:
            # largest i with n - B_i <= k; n - B_1 = 1 <= k so i exists
            while lo < hi:
                mid = (lo + hi + 1) // 2
                comps += 1
                if self.n - B[mid - 1] <= k:
                    lo = mid
                else:
                    hi = mid - 1
        return lo, comps

    def query(self, k: int) -> float:
        i, _ = self.locate(k)
        return self.values[i - 1]

    def dense(self) -> np.ndarray:
        """Estimated ``cost_k`` for every ``k = 1..n`` (index k-1)."""
        k = np.arange(1, self.n + 1, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if self.mode is Mode.DISTANCE:
            asc = np.asarray(self.endpoints[::-1], dtype=float)
            # count of endpoints <= k, counted from the small end
            below = np.searchsorted(asc, k, side="right")
            idx = self.t - below
        else:
            keys = np.asarray(self.keys, dtype=float)
            idx = np.searchsorted(keys, k, side="right") - 1
        return vals[idx]


def profile_oracle(profile: SuccinctProfile, k: int) -> float:
    """Distance lookup: the value at ``B_{i+1}`` for ``B_{i+1} <= k < B_i``."""
    if profile.mode is not Mode.DISTANCE:
        raise ValueError("profile_oracle expects a distance profile")
    return profile.query(k)


def profile_oracle_sim(profile: SuccinctProfile, k: int) -> float:
    """Similarity lookup: the value at ``i`` for ``n - B_i <= k < n - B_{i+1}``."""
    if profile.mode is not Mode.SIMILARITY:
        raise ValueError("profile_oracle_sim expects a similarity profile")
    return profile.query(k)


def exact_succinct_profile(mode: Mode, cost: np.ndarray) -> SuccinctProfile:
    """Wrap an exact profile vector so it answers lookups like an estimate."""
    n = int(cost.shape[0])
    if mode is Mode.DISTANCE:
        endpoints = tuple(float(b) for b in range(n, 0, -1))
        values = tuple(float(cost[int(b) - 1]) for b in endpoints)
    else:
        endpoints = tuple(float(n - i) for i in range(1, n + 1))
        values = tuple(float(cost[i - 1]) for i in range(1, n + 1))
    return SuccinctProfile(mode=mode, n=n, endpoints=endpoints, values=values)
