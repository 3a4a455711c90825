"""Similarity-mode cost and profile estimation.

With ``c_j`` the component count of the subgraph of edges of weight at least
``j`` and ``D_j = n - c_j``, the total cost is
``1/2 * sum_j (c_j + n - 1) * D_j``. The first factor lies in ``[n, 2n]`` and
is cheap to estimate at every j. The second is bucket-searched on a grid that
is fine near 0 and near n, where relative accuracy is hardest to get.
"""

from __future__ import annotations

import math

import numpy as np

from . import exact
from ._common import TAG_CC, TAG_D, TAG_DCAP, TAG_DCAP_D, charge_exact, prepare, work_estimate
from .errors import KTooSmall, WTooLarge
from .estimate import (
    MIN_K_FOR_D,
    EstimatorParams,
    estimate_cc_median,
    estimate_D_median,
    estimate_degree_cap,
    practical_eps,
)
from .graph import AccessModel, AccessSession, Mode, WeightedGraph
from .results import CostEstimate, SuccinctProfile, exact_succinct_profile
from .search import (
    BucketIndexVector,
    DiscretizationScheme,
    EstimateSequence,
    bucket_search,
    make_endpoints_similarity,
)

THEORY_DIVISOR = 120


def cost_from_buckets_sim(
    n: int, scheme: DiscretizationScheme, buckets: BucketIndexVector, c_hat
) -> float:
    """1/2 * sum_i B_i * sum_{j in bucket i} (c_j + n - 1), via prefix sums."""
    A = np.asarray(c_hat, dtype=float) + (n - 1)
    prefix = np.concatenate([[0.0], np.cumsum(A)])
    acc = 0.0
    for i in range(1, scheme.t):
        acc += scheme.endpoints[i - 1] * (prefix[buckets[i + 1] - 1] - prefix[buckets[i] - 1])
    return acc / 2


def profile_from_buckets_sim(scheme: DiscretizationScheme, buckets: BucketIndexVector) -> tuple[float, ...]:
    """Estimated cost_k at each k = n - B_i. Zero at the last endpoint."""
    t = scheme.t
    values = [0.0] * t
    tail = 0.0
    for i in range(t - 1, 0, -1):
        b = scheme.endpoints[i - 1]
        tail += (buckets[i + 1] - buckets[i]) * b
        values[i - 1] = b * (buckets[i] - 1) + tail
    return tuple(values)


def buckets_from_estimates_sim(n: int, W: int, eps: float, d_estimates):
    """Bucket given estimates of D_1..D_W."""
    est = list(d_estimates)
    if len(est) != W:
        raise ValueError(f"expected {W} estimates, got {len(est)}")
    scheme = make_endpoints_similarity(n, W, eps)
    seq = EstimateSequence.from_values(est, sentinel=0.0)
    return scheme, bucket_search(scheme, seq)


def _exact_estimate(graph, sess, run_eps, reason, r, theory) -> CostEstimate:
    before = sess.entries_scanned
    charge_exact(sess)
    value = exact.exact_cost_similarity(graph)
    return CostEstimate(
        value=float(value),
        mode=Mode.SIMILARITY,
        eps=run_eps,
        entries_scanned=sess.entries_scanned - before,
        num_estimates=0,
        buckets=None,
        scheme=None,
        exact_fallback=reason,
        r=r,
        theory=theory,
        extras={"exact_cost": value},
    )


def _run(graph, eps, *, r, theory, seed, access_model, trials, max_weight, allow_fallback, session, with_c):
    setup = prepare(
        graph,
        eps,
        r=r,
        theory=theory,
        divisor=THEORY_DIVISOR,
        seed=seed,
        access_model=access_model,
        max_weight=max_weight,
        session=session,
        default_eps=practical_eps,
    )
    n, W, run_eps, sess = setup.n, setup.W, setup.eps, setup.session
    d = float(graph.avg_degree)

    if theory:
        c_params = EstimatorParams.theory(run_eps, k=1, d=d, delta=1 / (8 * W))
        d_params = EstimatorParams.theory(run_eps / 8, k=W, d=d, delta=1 / (8 * W))
    else:
        tr = trials or 1
        c_params = EstimatorParams.practical(setup.r, k=1, trials=tr)
        d_params = EstimatorParams.practical(setup.r, k=W, eps=run_eps, trials=tr)

    reason = None
    if W > n:
        if not allow_fallback:
            raise WTooLarge(f"W={W} exceeds n={n}")
        reason = "W > n"
    elif W <= MIN_K_FOR_D:
        if not allow_fallback:
            raise KTooSmall(f"W={W} is too small for the sampling estimator; need W > {MIN_K_FOR_D}")
        reason = f"W <= {MIN_K_FOR_D}"
    elif allow_fallback:
        work = work_estimate(run_eps, W, d_params.r, d, d_params.trials)
        if with_c:
            work += W * c_params.r * c_params.trials * d
        if work > graph.m:
            reason = "sampling work exceeds m"
    if reason is not None:
        return _exact_estimate(graph, sess, run_eps, reason, setup.r, theory), None, True

    before = sess.entries_scanned
    c_values = None
    if with_c:
        if c_params.dcap is None:
            c_params = c_params.with_dcap(estimate_degree_cap(sess, c_params.gamma, setup.streams.stream(TAG_DCAP)))
        c_values = np.array([
            estimate_cc_median(sess.view(j, Mode.SIMILARITY), c_params, setup.streams.stream(TAG_CC, j)).value
            for j in range(1, W + 1)
        ])
    if d_params.dcap is None:
        d_params = d_params.with_dcap(estimate_degree_cap(sess, d_params.gamma, setup.streams.stream(TAG_DCAP_D)))

    def d_hat(j: int) -> float:
        view = sess.view(j, Mode.SIMILARITY)
        return estimate_D_median(view, d_params, setup.streams.stream(TAG_D, j)).value

    seq = EstimateSequence(W, d_hat, sentinel=0.0)
    scheme = make_endpoints_similarity(n, W, run_eps)
    buckets = bucket_search(scheme, seq)
    value = cost_from_buckets_sim(n, scheme, buckets, c_values) if with_c else math.nan
    est = CostEstimate(
        value=value,
        mode=Mode.SIMILARITY,
        eps=run_eps,
        entries_scanned=sess.entries_scanned - before,
        num_estimates=len(seq.evaluated) + (W if with_c else 0),
        buckets=buckets,
        scheme=scheme,
        r=setup.r,
        theory=theory,
        extras={
            "c_estimates": None if c_values is None else c_values.tolist(),
            "d_estimates": seq.materialized(),
            "params": d_params,
        },
    )
    return est, scheme, False


def app_cost_sim(
    graph: WeightedGraph,
    eps: float | None = None,
    *,
    r: int | None = None,
    theory: bool = False,
    seed=None,
    access_model: AccessModel | str = AccessModel.UNIT,
    trials: int | None = None,
    max_weight: int | None = None,
    allow_fallback: bool = True,
    session: AccessSession | None = None,
) -> CostEstimate:
    """Estimate the total single-linkage cost of a similarity graph.

    Arguments match :func:`sublinear_slc.distance.app_cost`. In theory mode
    ``eps`` is divided by 120. Practical mode defaults ``eps`` to
    ``sqrt(W/r)``. Graphs with ``W <= 10`` or ``W > n`` are solved exactly.
    """
    est, _, _ = _run(
        graph, eps, r=r, theory=theory, seed=seed, access_model=access_model, trials=trials,
        max_weight=max_weight, allow_fallback=allow_fallback, session=session, with_c=True,
    )
    return est


def app_profile_sim(
    graph: WeightedGraph,
    eps: float | None = None,
    *,
    r: int | None = None,
    theory: bool = False,
    seed=None,
    access_model: AccessModel | str = AccessModel.UNIT,
    trials: int | None = None,
    max_weight: int | None = None,
    allow_fallback: bool = True,
    session: AccessSession | None = None,
) -> SuccinctProfile:
    """Succinct estimate of the similarity profile.

    Only the bucketed D pass is needed; the per-threshold component counts
    that the total cost uses are skipped.
    """
    est, scheme, fell_back = _run(
        graph, eps, r=r, theory=theory, seed=seed, access_model=access_model, trials=trials,
        max_weight=max_weight, allow_fallback=allow_fallback, session=session, with_c=False,
    )
    if fell_back:
        prof = exact_succinct_profile(Mode.SIMILARITY, exact.exact_profile(graph, Mode.SIMILARITY))
        return SuccinctProfile(mode=prof.mode, n=prof.n, endpoints=prof.endpoints, values=prof.values, estimate=est)
    values = profile_from_buckets_sim(scheme, est.buckets)
    return SuccinctProfile(mode=Mode.SIMILARITY, n=graph.n, endpoints=scheme.endpoints, values=values, estimate=est)
