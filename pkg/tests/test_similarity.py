import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import TRIANGLE, random_connected, star
from sublinear_slc import exact
from sublinear_slc.errors import KTooSmall, WTooLarge
from sublinear_slc.graph import Mode, build_graph
from sublinear_slc.results import SuccinctProfile, profile_oracle, profile_oracle_sim
from sublinear_slc.search import bucket_values, error_bounds
from sublinear_slc.similarity import (
    app_cost_sim,
    app_profile_sim,
    buckets_from_estimates_sim,
    cost_from_buckets_sim,
    profile_from_buckets_sim,
)
from sublinear_slc.synthetic import cycle_with_chords


def curve_D(g):
    c = exact.component_curve(g, "similarity").values
    return c, [g.n - x for x in c]


class TestCost:
    def test_triangle(self):
        est = app_cost_sim(build_graph(TRIANGLE), r=100, seed=0)
        assert est.value == 8 and est.exact_fallback

    def test_star_injection(self):
        g = star(3)
        c, D = curve_D(g)
        scheme, buckets = buckets_from_estimates_sim(4, 1, 0.3, D)
        assert cost_from_buckets_sim(4, scheme, buckets, c) == 6 == exact.exact_cost_similarity(g)

    def test_small_W_rules(self):
        g = cycle_with_chords(500, 8, np.random.default_rng(0))
        assert app_cost_sim(g, r=50, seed=0).exact_fallback
        with pytest.raises(KTooSmall):
            app_cost_sim(g, r=50, seed=0, allow_fallback=False)
        h = cycle_with_chords(30, 50, np.random.default_rng(0))
        with pytest.raises(WTooLarge):
            app_cost_sim(h, r=50, seed=0, allow_fallback=False)

    def test_deterministic(self):
        g = cycle_with_chords(3000, 30, np.random.default_rng(2))
        a = app_cost_sim(g, r=200, seed=5, allow_fallback=False)
        b = app_cost_sim(g, r=200, seed=5, allow_fallback=False)
        assert a.value == b.value and a.entries_scanned == b.entries_scanned

    def test_estimate_ranges(self):
        g = cycle_with_chords(3000, 30, np.random.default_rng(2))
        est = app_cost_sim(g, r=500, seed=5, allow_fallback=False)
        assert all(1 <= x <= g.n for x in est.extras["c_estimates"])
        assert all(0 <= x <= g.n - 1 for x in est.extras["d_estimates"].values())
        assert est.value >= g.n * (g.n - 1) / 4
        truth = exact.exact_cost_similarity(g)
        assert abs(est.value - truth) <= 0.15 * truth


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(12, 80), W=st.integers(1, 12), eps=st.floats(0.02, 0.98))
def test_exact_injection(seed, n, W, eps):
    g = random_connected(np.random.default_rng(seed), n, W, 0.05)
    c, D = curve_D(g)
    scheme, buckets = buckets_from_estimates_sim(n, g.W, eps, D)
    truth = exact.exact_cost_similarity(g)
    est = cost_from_buckets_sim(n, scheme, buckets, c)
    Dbar = bucket_values(scheme, buckets)
    assert est == pytest.approx(0.5 * float(np.sum((np.array(c) + n - 1) * Dbar)))
    assert abs(est - truth) <= 120 * eps * truth

    values = profile_from_buckets_sim(scheme, buckets)
    assert values[-1] == 0
    assert all(a >= b - 1e-9 for a, b in zip(values, values[1:]))
    profile = exact.exact_profile(g, "similarity")
    for i in range(1, scheme.t):
        jp = buckets[i] - 1
        B = scheme.endpoints[i - 1]
        tail = float(np.sum(Dbar[jp:] - np.array(D[jp:])))
        if jp == 0:
            base = int(profile[0])
            assert values[i - 1] == pytest.approx(base + tail)
        else:
            base = exact.profile_at_curve_similarity(exact.component_curve(g, "similarity"), jp)
            assert values[i - 1] == pytest.approx(base + tail + (B - D[jp - 1]) * jp)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), eps=st.floats(0.02, 0.5))
def test_per_k_injection_bound(seed, eps):
    g = random_connected(np.random.default_rng(seed), 80, 15, 0.04)
    c, D = curve_D(g)
    scheme, buckets = buckets_from_estimates_sim(g.n, g.W, eps, D)
    prof = SuccinctProfile(Mode.SIMILARITY, g.n, scheme.endpoints, profile_from_buckets_sim(scheme, buckets))
    truth = exact.exact_profile(g, "similarity")
    dense = prof.dense()
    assert np.all(np.abs(dense - truth) <= 30 * eps * np.maximum(truth, g.n) + 1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_product_error_decomposition(seed):
    rng = np.random.default_rng(seed)
    n, W = 300, 30
    g = random_connected(rng, n, W, 0.01)
    W = g.W
    eps = float(rng.uniform(0.05, 0.5))
    c, D = curve_D(g)
    c = np.array(c, float)
    D = np.array(D, float)
    A = c + n - 1
    assert np.all((A >= n) & (A <= 2 * n))
    T = error_bounds("similarity", n, W, eps, D)
    for sgn in (-1, 1):
        c_hat = np.clip(c + sgn * eps * c, 1, n)
        D_hat = np.clip(D + sgn * T * 0.999, 0, n - 1)
        scheme, buckets = buckets_from_estimates_sim(n, W, eps, D_hat)
        Dbar = bucket_values(scheme, buckets)
        A_hat = c_hat + n - 1
        lhs = np.abs(A_hat * Dbar - A * D)
        assert np.all(lhs <= 31 * eps * A * D + 20 * eps * n * n / W + 1e-9)


class TestProfile:
    def test_oracle(self):
        g = cycle_with_chords(3000, 40, np.random.default_rng(1))
        prof = app_profile_sim(g, r=300, seed=0, allow_fallback=False)
        assert profile_oracle_sim(prof, g.n) == 0
        assert prof.query(1) == prof.values[0]
        with pytest.raises(ValueError):
            profile_oracle(prof, 1)
        assert prof.estimate.extras["c_estimates"] is None
        truth = exact.exact_profile(g, "similarity")
        ratio = np.abs(prof.dense() - truth).sum() / exact.profile_total(truth)
        assert ratio < 0.2

    def test_fallback(self):
        prof = app_profile_sim(build_graph(TRIANGLE), r=10, seed=0)
        assert prof.dense().tolist() == [5, 3, 0]

    def test_cheaper_than_cost(self):
        g = cycle_with_chords(3000, 40, np.random.default_rng(1))
        prof = app_profile_sim(g, r=300, seed=0, allow_fallback=False)
        cost = app_cost_sim(g, r=300, seed=0, allow_fallback=False)
        assert prof.estimate.entries_scanned < cost.entries_scanned
        assert prof.estimate.buckets == cost.buckets
