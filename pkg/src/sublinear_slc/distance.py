"""Distance-mode cost and profile estimation.

With ``c_j`` the number of components of the subgraph of edges of weight at
most ``j``, the total cost is ``n(n-1)/2 + 1/2 * sum_{j<W} (c_j^2 - c_j)``. The
``c_j`` are estimated by sampling, but only at the ``O(log W / eps)`` indices
a bucket search over a geometric grid touches. Every index is then rounded
up to the grid endpoint of its bucket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import exact
from ._common import TAG_CC, TAG_DCAP, charge_exact, prepare, work_estimate
from .estimate import EstimatorParams, estimate_cc_median, estimate_degree_cap, practical_eps
from .graph import AccessModel, AccessSession, Mode, WeightedGraph
from .results import CostEstimate, SuccinctProfile, exact_succinct_profile
from .search import (
    BucketIndexVector,
    DiscretizationScheme,
    EstimateSequence,
    bucket_search,
    make_endpoints_distance,
)

THEORY_COST_DIVISOR = 102
THEORY_PROFILE_DIVISOR = 484


def cost_from_buckets(n: int, scheme: DiscretizationScheme, buckets: BucketIndexVector) -> float:
    """n(n-1)/2 + 1/2 * sum_i |bucket i| * (B_i^2 - B_i)."""
    acc = 0.0
    for i in range(1, scheme.t):
        b = scheme.endpoints[i - 1]
        acc += (buckets[i + 1] - buckets[i]) * (b * b - b)
    return n * (n - 1) / 2 + acc / 2


def profile_from_buckets(n: int, scheme: DiscretizationScheme, buckets: BucketIndexVector) -> tuple[float, ...]:
    """Estimated cost_k at each k = B_i. Zero at B_1 = n."""
    values = [0.0]
    running = 0.0
    for i in range(2, scheme.t + 1):
        b_prev = scheme.endpoints[i - 2]
        running += (buckets[i] - buckets[i - 1]) * b_prev
        values.append(n - scheme.endpoints[i - 1] * buckets[i] + running)
    return tuple(values)


def buckets_from_estimates(n: int, W: int, eps: float, estimates) -> tuple[DiscretizationScheme, BucketIndexVector]:
    """Bucket given estimates of c_1..c_{W-1}. Used to feed exact or perturbed curves."""
    scheme = make_endpoints_distance(n, W, eps)
    est = list(estimates)
    if len(est) != W - 1:
        raise ValueError(f"expected {W - 1} estimates (c_1..c_(W-1)), got {len(est)}")
    seq = EstimateSequence.from_values(est, sentinel=1.0)
    return scheme, bucket_search(scheme, seq)


@dataclass
class _Run:
    estimate: CostEstimate
    fallback_graph: WeightedGraph | None = None


def _run(
    graph: WeightedGraph,
    eps,
    *,
    r,
    theory,
    divisor,
    seed,
    access_model,
    trials,
    max_weight,
    allow_fallback,
    session,
) -> _Run:
    setup = prepare(
        graph,
        eps,
        r=r,
        theory=theory,
        divisor=divisor,
        seed=seed,
        access_model=access_model,
        max_weight=max_weight,
        session=session,
        default_eps=lambda rr, W: practical_eps(rr, math.sqrt(W)),
    )
    n, W, run_eps, sess = setup.n, setup.W, setup.eps, setup.session
    k = math.sqrt(W)
    d = float(graph.avg_degree)

    if theory:
        params = EstimatorParams.theory(run_eps / 8, k=k, d=d, delta=1 / (4 * W))
    else:
        params = EstimatorParams.practical(setup.r, k=k, eps=run_eps, trials=trials or 1)

    reason = None
    if n < k:
        reason = "n < sqrt(W)"
    elif allow_fallback and run_eps < k / n:
        reason = "eps < sqrt(W)/n"
    elif allow_fallback and work_estimate(run_eps, W, params.r, d, params.trials) > graph.m:
        reason = "sampling work exceeds m"
    if reason is not None:
        before = sess.entries_scanned
        charge_exact(sess)
        value = exact.exact_cost_distance(graph)
        est = CostEstimate(
            value=float(value),
            mode=Mode.DISTANCE,
            eps=run_eps,
            entries_scanned=sess.entries_scanned - before,
            num_estimates=0,
            buckets=None,
            scheme=None,
            exact_fallback=reason,
            r=params.r,
            theory=theory,
            extras={"exact_cost": value},
        )
        return _Run(est, fallback_graph=graph)

    before = sess.entries_scanned
    if params.dcap is None:
        params = params.with_dcap(estimate_degree_cap(sess, params.gamma, setup.streams.stream(TAG_DCAP)))

    def c_hat(j: int) -> float:
        view = sess.view(j, Mode.DISTANCE)
        return estimate_cc_median(view, params, setup.streams.stream(TAG_CC, j)).value

    seq = EstimateSequence(W - 1, c_hat, sentinel=1.0)
    scheme = make_endpoints_distance(n, W, run_eps)
    buckets = bucket_search(scheme, seq)
    est = CostEstimate(
        value=cost_from_buckets(n, scheme, buckets),
        mode=Mode.DISTANCE,
        eps=run_eps,
        entries_scanned=sess.entries_scanned - before,
        num_estimates=len(seq.evaluated),
        buckets=buckets,
        scheme=scheme,
        r=params.r,
        theory=theory,
        extras={"estimates": seq.materialized(), "params": params},
    )
    return _Run(est)


def app_cost(
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
    """Estimate the total single-linkage cost of a distance graph.

    Parameters
    ----------
    graph : WeightedGraph
        Connected graph with integer weights in ``[1, W]``.
    eps : float, optional
        Target accuracy. Required with ``theory=True``, where it is divided by
        102 internally. In practical mode it defaults to ``sqrt(sqrt(W)/r)``
        and sets the grid spacing.
    r : int, optional
        Samples per component estimate in practical mode (default 1000).
    theory : bool
        Use the sample sizes that carry the worst-case guarantee.
    seed : int or numpy Generator, optional
        Root seed. Equal seeds give identical results, including
        ``entries_scanned``.
    allow_fallback : bool
        Solve exactly when that is cheaper than sampling. Tiny ``n``
        relative to ``sqrt(W)`` always falls back.

    Returns
    -------
    CostEstimate
    """
    return _run(
        graph, eps, r=r, theory=theory, divisor=THEORY_COST_DIVISOR, seed=seed,
        access_model=access_model, trials=trials, max_weight=max_weight,
        allow_fallback=allow_fallback, session=session,
    ).estimate


def app_profile(
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
    """Succinct estimate of ``cost_k`` for all k. Same arguments as :func:`app_cost`.

    In theory mode ``eps`` is divided by 484 instead of 102.
    """
    run = _run(
        graph, eps, r=r, theory=theory, divisor=THEORY_PROFILE_DIVISOR, seed=seed,
        access_model=access_model, trials=trials, max_weight=max_weight,
        allow_fallback=allow_fallback, session=session,
    )
    est = run.estimate
    if run.fallback_graph is not None:
        prof = exact_succinct_profile(Mode.DISTANCE, exact.exact_profile(graph, Mode.DISTANCE))
        return SuccinctProfile(mode=prof.mode, n=prof.n, endpoints=prof.endpoints, values=prof.values, estimate=est)
    values = profile_from_buckets(graph.n, est.scheme, est.buckets)
    return SuccinctProfile(mode=Mode.DISTANCE, n=graph.n, endpoints=est.scheme.endpoints, values=values, estimate=est)
