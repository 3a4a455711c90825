"""Binary search over noisy sequences and the bucket endpoints it searches with.

The estimated sequences here are only approximately non-increasing. Plain
bisection still returns answers that are monotone in the key, and when the
endpoint gaps dominate the estimation error every index lands within one
bucket of where its true value belongs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EpsOutOfRange, IndexOutOfRange, NotMonotone, NTooSmall, WTooLarge
from .graph import Mode


class EstimateSequence:
    """Lazily evaluated, memoized values ``x_1..x_len`` plus a sentinel at ``len+1``.

    The first value stored for an index wins, so concurrent fills of the same
    index all observe one value.
    """

    def __init__(self, length: int, fn: Callable[[int], float], sentinel: float):
        if length < 0:
            raise ValueError("length must be non-negative")
        self.length = int(length)
        self.sentinel = sentinel
        self._fn = fn
        self._memo: dict[int, float] = {}

    @classmethod
    def from_values(cls, values: Sequence[float], sentinel: float) -> "EstimateSequence":
        vals = [float(x) for x in values]
        return cls(len(vals), lambda j: vals[j - 1], sentinel)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> float:
        if j == self.length + 1:
            return self.sentinel
        if not 1 <= j <= self.length:
            raise IndexOutOfRange(f"index {j} not in [1, {self.length + 1}]")
        if j not in self._memo:
            self._memo.setdefault(j, self._fn(j))
        return self._memo[j]

    @property
    def evaluated(self) -> frozenset[int]:
        return frozenset(self._memo)

    def materialized(self) -> dict[int, float]:
        return dict(self._memo)


def binary_search(seq: EstimateSequence, l: int, r: int, B: float) -> int:
    """Leftmost-biased bisection: go left when ``seq[m] <= B``.

    Returns an index in ``[l, r]`` after at most ``ceil(log2(r - l + 1))``
    evaluations.
    """
    if not 1 <= l <= r <= seq.length + 1:
        raise IndexOutOfRange(f"need 1 <= l <= r <= {seq.length + 1}, got l={l}, r={r}")
    while l < r:
        m = (l + r) // 2
        if seq[m] <= B:
            r = m
        else:
            l = m + 1
    return l


@dataclass(frozen=True)
class DiscretizationScheme:
    """Strictly decreasing endpoints ``B_1 > ... > B_t`` with per-endpoint tags.

    Tags name the piece that produced each endpoint. An endpoint dropped
    because it failed to decrease strictly is listed in ``merged``.
    """

    mode: Mode
    eps: float
    n: int
    W: int
    endpoints: tuple[float, ...]
    tags: tuple[str, ...]
    pieces: tuple[int, ...]
    merged: tuple[tuple[str, float], ...] = ()

    @property
    def t(self) -> int:
        return len(self.endpoints)

    def B(self, i: int) -> float:
        """1-based endpoint with ``B_0 = +inf`` and ``B_{t+1} = -inf``."""
        if i <= 0:
            return math.inf
        if i > self.t:
            return -math.inf
        return self.endpoints[i - 1]

    @property
    def upper(self) -> float:
        return self.endpoints[0]

    @property
    def lower(self) -> float:
        return self.endpoints[-1]


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise EpsOutOfRange(f"eps must lie in (0, 1), got {eps}")


def _largest_int(pred, start: int = 0) -> int:
    """Largest integer i >= start - 1 with pred(i) true, for a pred that is true then false."""
    i = start - 1
    step = 1
    while pred(i + step):
        i += step
        step *= 2
    while step > 1:
        step //= 2
        if pred(i + step):
            i += step
    return i


_TOL = 1e-12


def _finish(mode, eps, n, W, raw, pieces) -> DiscretizationScheme:
    (bottom_value, bottom_tag) = raw[-1]
    kept: list[tuple[float, str]] = []
    merged: list[tuple[str, float]] = []
    for value, tag in raw[:-1]:
        if (kept and value >= kept[-1][0]) or value <= bottom_value:
            merged.append((tag, value))
            continue
        kept.append((value, tag))
    kept.append((bottom_value, bottom_tag))
    return DiscretizationScheme(
        mode=mode,
        eps=eps,
        n=n,
        W=W,
        endpoints=tuple(v for v, _ in kept),
        tags=tuple(t for _, t in kept),
        pieces=tuple(pieces),
        merged=tuple(merged),
    )


def make_endpoints_distance(n: int, W: int, eps: float) -> DiscretizationScheme:
    """Endpoints over [1, n] for component counts.

    Geometric from ``n`` down to about ``n/sqrt(W)`` (ratio ``1+eps``), then
    arithmetic in steps of ``eps*n/sqrt(W)``, then the floor value 1.
    """
    _check_eps(eps)
    if W < 1 or math.sqrt(W) > n:
        raise NTooSmall(f"need sqrt(W) <= n, got n={n}, W={W}")
    root = math.sqrt(W)
    t1 = _largest_int(lambda i: (1 + eps) ** (i - 1) <= root * (1 + _TOL), start=1)
    t2 = _largest_int(lambda i: 1 - eps * i >= eps * (1 - _TOL), start=0)
    raw = [(n / (1 + eps) ** (i - 1), f"geometric:{i}") for i in range(1, t1 + 1)]
    raw += [(n / root * (1 - eps * (i - t1)), f"arithmetic:{i}") for i in range(t1 + 1, t1 + t2 + 1)]
    raw.append((1.0, "floor"))
    return _finish(Mode.DISTANCE, eps, n, W, raw, (t1, t2))


def make_endpoints_similarity(n: int, W: int, eps: float) -> DiscretizationScheme:
    """Endpoints over [0, n-1] for D = n - c.

    Arithmetic from ``n`` down to ``n - n/W``, geometric gaps growing towards
    ``n/2``, geometric values shrinking towards ``n/W``, arithmetic down to
    ``eps*n/W``, then 0.
    """
    _check_eps(eps)
    if W < 1 or W > n:
        raise WTooLarge(f"need W <= n, got n={n}, W={W}")
    t1 = _largest_int(lambda i: eps * i <= 1 + _TOL, start=0)
    t2 = _largest_int(lambda i: (1 + eps) ** i <= (W / 2) * (1 + _TOL), start=0) if W >= 2 else 0
    t3 = _largest_int(lambda i: 1 - eps * i >= eps * (1 - _TOL), start=0)
    step = n / W
    raw = [(float(n - 1), "top")]
    raw += [(n - i * eps * step, f"arithmetic-high:{i}") for i in range(2, t1 + 1)]
    raw += [(n - (1 + eps) ** (i - t1) * step, f"geometric-high:{i}") for i in range(t1 + 1, t1 + t2 + 1)]
    raw += [(n / (2 * (1 + eps) ** (i - t1 - t2)), f"geometric-low:{i}")
            for i in range(t1 + t2 + 1, t1 + 2 * t2 + 1)]
    raw += [(step * (1 - (i - t1 - 2 * t2) * eps), f"arithmetic-low:{i}")
            for i in range(t1 + 2 * t2 + 1, t1 + 2 * t2 + t3 + 1)]
    raw.append((0.0, "floor"))
    return _finish(Mode.SIMILARITY, eps, n, W, raw, (t1, t2, t3))


def error_bounds(scheme_or_mode, n: int, W: int, eps: float, values: Sequence[float]) -> np.ndarray:
    """Per-index tolerances under which bucket search lands within one bucket.

    Distance: ``eps/8 * max(n/sqrt(W), c_j)``. Similarity:
    ``eps/8 * max(n/W, min(D_j, n - D_j))``.
    """
    mode = scheme_or_mode.mode if isinstance(scheme_or_mode, DiscretizationScheme) else Mode.parse(scheme_or_mode)
    x = np.asarray(values, dtype=float)
    if mode is Mode.DISTANCE:
        return eps / 8 * np.maximum(n / math.sqrt(W), x)
    return eps / 8 * np.maximum(n / W, np.minimum(x, n - x))


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violation: tuple[int, int, str] | None = None

    def __bool__(self) -> bool:
        return self.valid


def check_valid_discretization(
    scheme: DiscretizationScheme, x: Sequence[float], T: Sequence[float]
) -> ValidityReport:
    """Check that every gap adjacent to x_j's interval exceeds T_j.

    A value sitting exactly on an endpoint belongs to both neighbouring
    intervals and must satisfy the conditions for each. The violation is
    reported as ``(i, j, side)`` with 1-based i and j.
    """
    x = [float(v) for v in x]
    T = [float(v) for v in T]
    if len(x) != len(T):
        raise ValueError("x and T must have the same length")
    for a, b in zip(x, x[1:]):
        if b > a:
            raise NotMonotone("true values must be non-increasing")
    t = scheme.t
    B = scheme.B
    for j, (xj, tj) in enumerate(zip(x, T), start=1):
        if not B(t) <= xj <= B(1):
            raise ValueError(f"x_{j} = {xj} outside [{B(t)}, {B(1)}]")
        for i in range(1, t):
            if not B(i + 1) <= xj <= B(i):
                continue
            if i >= 2 and not tj < B(i - 1) - B(i):
                return ValidityReport(False, (i, j, "upper"))
            if i <= t - 2 and not tj < B(i + 1) - B(i + 2):
                return ValidityReport(False, (i, j, "lower"))
    return ValidityReport(True)


@dataclass(frozen=True)
class BucketIndexVector:
    """``indices[i-1]`` is the first sequence index at or below ``B_i``.

    Bucket ``i`` holds indices ``indices[i-1] .. indices[i]-1``.
    """

    indices: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.indices[i - 1]

    def __len__(self) -> int:
        return len(self.indices)

    def bucket(self, i: int) -> range:
        return range(self.indices[i - 1], self.indices[i])

    def bucket_of(self) -> dict[int, int]:
        out = {}
        for i in range(1, len(self.indices)):
            for j in self.bucket(i):
                out[j] = i
        return out


def bucket_search(scheme: DiscretizationScheme, seq: EstimateSequence) -> BucketIndexVector:
    """Search every key but the last; the last index is pinned to ``len(seq)+1``."""
    end = seq.length + 1
    out = [binary_search(seq, 1, end, b) for b in scheme.endpoints[:-1]]
    out.append(end)
    return BucketIndexVector(tuple(out))


def bucket_values(scheme: DiscretizationScheme, buckets: BucketIndexVector) -> np.ndarray:
    """Rounded value for each index: ``B_i`` for ``j`` in bucket i (index j-1)."""
    end = buckets.indices[-1]
    out = np.empty(end - 1, dtype=float)
    for i in range(1, scheme.t):
        lo, hi = buckets[i], buckets[i + 1]
        out[lo - 1 : hi - 1] = scheme.endpoints[i - 1]
    return out
