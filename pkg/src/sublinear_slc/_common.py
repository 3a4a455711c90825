"""Setup shared by the distance and similarity drivers."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import Disconnected, EpsOutOfRange
from .graph import AccessModel, AccessSession, WeightedGraph
from .rng import StreamFactory

DEFAULT_R = 1000

# stream tags, kept distinct so the passes of one run never share randomness
TAG_DCAP = 0
TAG_CC = 1
TAG_D = 2
TAG_DCAP_D = 3


@dataclass(frozen=True)
class RunSetup:
    session: AccessSession
    streams: StreamFactory
    W: int
    n: int
    eps: float
    r: int | None
    theory: bool


def prepare(
    graph: WeightedGraph,
    eps: float | None,
    *,
    r: int | None,
    theory: bool,
    divisor: float,
    seed,
    access_model: AccessModel | str,
    max_weight: int | None,
    session: AccessSession | None,
    default_eps,
) -> RunSetup:
    if graph.n == 0 or not graph.is_connected:
        raise Disconnected(f"graph has {graph.num_components} components; a connected graph is required")
    W = graph.W if max_weight is None else int(max_weight)
    if W < graph.W:
        raise ValueError(f"max_weight {W} is below the largest weight in the graph ({graph.W})")
    if theory:
        if eps is None:
            raise EpsOutOfRange("theory mode needs eps")
        if not 0.0 < eps < 1.0:
            raise EpsOutOfRange(f"eps must lie in (0, 1), got {eps}")
        run_eps = eps / divisor
    else:
        r = DEFAULT_R if r is None else int(r)
        if r < 1:
            raise ValueError("r must be positive")
        run_eps = default_eps(r, W) if eps is None else eps
        if not 0.0 < run_eps < 1.0:
            raise EpsOutOfRange(f"eps must lie in (0, 1), got {run_eps}")
    if session is None:
        session = AccessSession(graph, access_model)
    elif session.graph is not graph:
        raise ValueError("session belongs to a different graph")
    return RunSetup(session=session, streams=StreamFactory(seed), W=W, n=graph.n, eps=run_eps, r=r, theory=theory)


def work_estimate(eps: float, W: int, r: int, d: float, trials: int = 1) -> float:
    """Rough sampling work: ceil(log2(W)^2 / eps) thresholds times r*d entries each."""
    lg = math.log2(W) if W > 1 else 0.0
    return math.ceil(lg * lg / eps) * r * trials * d


def charge_exact(session: AccessSession) -> None:
    """An exact computation reads every adjacency entry once."""
    deg = session.graph.degrees
    session.charge(int(deg.sum()), int((deg * (deg + 1) // 2).sum()))
