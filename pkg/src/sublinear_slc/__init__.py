"""Sublinear-time estimation of single-linkage clustering costs.

Distance graphs (small weights merge first) and similarity graphs (large
weights merge first) are both supported. See :func:`app_cost`,
:func:`app_cost_sim` and the profile counterparts.
"""

from .corpus import CorpusSpec, ingest, load_graph, read_cache, round_weights, serialize, write_cache
from .distance import app_cost, app_profile
from .errors import SLCError
from .estimate import (
    CcEstimate,
    DEstimate,
    EstimatorParams,
    estimate_cc,
    estimate_cc_median,
    estimate_D_median,
    estimate_D_sim,
    estimate_degree_cap,
)
from .exact import (
    ComponentCurve,
    SpanningWeights,
    component_curve,
    exact_cost,
    exact_cost_distance,
    exact_cost_similarity,
    exact_profile,
    formula_cost_distance,
    formula_cost_similarity,
    kruskal,
    maxst_weight_from_curve,
    mst_weight_from_curve,
)
from .graph import AccessModel, AccessSession, Mode, ThresholdView, WeightedGraph, build_graph, degree, view_neighbors
from .hardness import HardInstance, closed_form_cost, gen_hard_instance, separation_bounds
from .harness import TrialReport, bench_profile_error, emit_profile_csv, run_estimate, run_exact
from .results import CostEstimate, SuccinctProfile, profile_oracle, profile_oracle_sim
from .rng import make_rng
from .search import (
    BucketIndexVector,
    DiscretizationScheme,
    EstimateSequence,
    binary_search,
    bucket_search,
    check_valid_discretization,
    make_endpoints_distance,
    make_endpoints_similarity,
)
from .similarity import app_cost_sim, app_profile_sim

__version__ = "0.1.0"

__all__ = [
    "AccessModel",
    "AccessSession",
    "BucketIndexVector",
    "CcEstimate",
    "ComponentCurve",
    "CorpusSpec",
    "CostEstimate",
    "DEstimate",
    "DiscretizationScheme",
    "EstimateSequence",
    "EstimatorParams",
    "HardInstance",
    "Mode",
    "SLCError",
    "SpanningWeights",
    "SuccinctProfile",
    "ThresholdView",
    "TrialReport",
    "WeightedGraph",
    "app_cost",
    "app_cost_sim",
    "app_profile",
    "app_profile_sim",
    "bench_profile_error",
    "binary_search",
    "bucket_search",
    "build_graph",
    "check_valid_discretization",
    "closed_form_cost",
    "component_curve",
    "degree",
    "emit_profile_csv",
    "estimate_D_median",
    "estimate_D_sim",
    "estimate_cc",
    "estimate_cc_median",
    "estimate_degree_cap",
    "exact_cost",
    "exact_cost_distance",
    "exact_cost_similarity",
    "exact_profile",
    "formula_cost_distance",
    "formula_cost_similarity",
    "gen_hard_instance",
    "ingest",
    "kruskal",
    "load_graph",
    "make_endpoints_distance",
    "make_endpoints_similarity",
    "make_rng",
    "maxst_weight_from_curve",
    "mst_weight_from_curve",
    "profile_oracle",
    "profile_oracle_sim",
    "read_cache",
    "round_weights",
    "run_estimate",
    "run_exact",
    "separation_bounds",
    "serialize",
    "view_neighbors",
    "write_cache",
]
