import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import TRIANGLE, nx_curve, path_graph, random_connected, slc_merge_weights, slc_profile, star, to_nx
from sublinear_slc import exact
from sublinear_slc.errors import CurveNotDistanceMode, CurveNotSimilarityMode, Disconnected
from sublinear_slc.graph import Mode, build_graph


def brute_force_tree_totals(graph):
    """Min and max spanning-tree totals by enumerating all (n-1)-edge subsets."""
    u, v, w = graph.edges()
    edges = list(zip(u.tolist(), v.tolist(), w.tolist()))
    totals = []
    for sub in itertools.combinations(edges, graph.n - 1):
        G = nx.Graph()
        G.add_nodes_from(range(graph.n))
        G.add_edges_from((a, b) for a, b, _ in sub)
        if nx.is_connected(G):
            totals.append(sum(x for _, _, x in sub))
    return min(totals), max(totals)


class TestKruskal:
    def test_triangle(self):
        g = build_graph(TRIANGLE)
        mst = exact.kruskal(g)
        assert mst.weights.tolist() == [1, 2] and mst.total == 3
        mx = exact.kruskal(g, maximize=True)
        assert mx.weights.tolist() == [3, 2] and mx.total == 5

    def test_single_edge(self):
        assert exact.kruskal(build_graph([(0, 1, 1)])).weights.tolist() == [1]

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            exact.kruskal(build_graph([(0, 1, 1)], n=3))

    @pytest.mark.parametrize("seed", range(15))
    def test_brute_force(self, seed):
        g = random_connected(np.random.default_rng(seed), 6, 5, 0.5)
        lo, hi = brute_force_tree_totals(g)
        assert exact.kruskal(g).total == lo
        assert exact.kruskal(g, maximize=True).total == hi


class TestCurve:
    def test_triangle(self):
        g = build_graph(TRIANGLE)
        assert exact.component_curve(g, Mode.DISTANCE).values == (2, 1, 1)
        assert exact.component_curve(g, Mode.SIMILARITY).values == (1, 1, 2)

    def test_boundaries(self):
        g = build_graph(TRIANGLE)
        assert exact.component_curve(g, "distance")[0] == 3
        assert exact.component_curve(g, "similarity")[4] == 3

    @pytest.mark.parametrize("seed", range(10))
    def test_against_networkx(self, seed):
        g = random_connected(np.random.default_rng(seed), 30, 9, 0.1)
        assert list(exact.component_curve(g, "distance").values) == nx_curve(g, at_least=False)
        assert list(exact.component_curve(g, "similarity").values) == nx_curve(g, at_least=True)

    def test_curve_on_disconnected_graph(self):
        g = build_graph([(0, 1, 2)], n=3)
        assert exact.component_curve(g, "distance").values == (3, 2)


class TestCosts:
    def test_distance_examples(self):
        assert exact.exact_cost_distance(build_graph(TRIANGLE)) == 4
        assert exact.exact_cost_distance(build_graph([(0, 1, 1)])) == 1
        assert exact.exact_cost_distance(path_graph([1, 1])) == 3

    def test_similarity_examples(self):
        assert exact.exact_cost_similarity(build_graph(TRIANGLE)) == 8
        assert exact.exact_cost_similarity(build_graph([(0, 1, 1)])) == 1

    def test_formula_examples(self):
        g = build_graph(TRIANGLE)
        assert exact.formula_cost_distance(exact.component_curve(g, "distance"), 3) == 4
        assert exact.formula_cost_similarity(exact.component_curve(g, "similarity"), 3) == 8
        s = star(3, w=2)
        assert exact.formula_cost_distance(exact.component_curve(s, "distance"), 4) == 12
        assert exact.exact_cost_distance(s) == 12

    def test_unit_weights(self):
        g = random_connected(np.random.default_rng(0), 20, 1, 0.2)
        assert exact.formula_cost_distance(exact.component_curve(g, "distance"), 20) == 190

    def test_curve_weights(self):
        g = build_graph(TRIANGLE)
        assert exact.mst_weight_from_curve(exact.component_curve(g, "distance"), 3) == 3
        assert exact.maxst_weight_from_curve(exact.component_curve(g, "similarity"), 3) == 5
        assert exact.mst_weight_from_curve(exact.component_curve(build_graph([(0, 1, 1)]), "distance"), 2) == 1

    def test_mode_mismatch(self):
        g = build_graph(TRIANGLE)
        with pytest.raises(CurveNotDistanceMode):
            exact.formula_cost_distance(exact.component_curve(g, "similarity"), 3)
        with pytest.raises(CurveNotSimilarityMode):
            exact.formula_cost_similarity(exact.component_curve(g, "distance"), 3)

    def test_no_overflow(self):
        n = 3000
        W = 2**40
        g = build_graph([(i, i + 1, W) for i in range(n - 1)])
        assert exact.exact_cost_distance(g) == W * n * (n - 1) // 2


class TestProfiles:
    def test_triangle(self):
        g = build_graph(TRIANGLE)
        assert exact.exact_profile(g, "distance").tolist() == [3, 1, 0]
        assert exact.exact_profile(g, "similarity").tolist() == [5, 3, 0]

    @pytest.mark.parametrize("seed", range(20))
    def test_against_literal_single_linkage(self, seed):
        g = random_connected(np.random.default_rng(seed), 12, 6, 0.3)
        assert exact.exact_profile(g, "distance").tolist() == slc_profile(g, maximize=False)
        assert exact.exact_profile(g, "similarity").tolist() == slc_profile(g, maximize=True)

    @pytest.mark.parametrize("seed", range(10))
    def test_merge_weights_are_tree_weights(self, seed):
        g = random_connected(np.random.default_rng(seed), 15, 8, 0.3)
        assert sorted(slc_merge_weights(g, False)) == exact.kruskal(g).weights.tolist()
        ref = nx.minimum_spanning_tree(to_nx(g)).size(weight="weight")
        assert exact.kruskal(g).total == ref


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), W=st.integers(1, 20), p=st.floats(0, 0.5))
def test_formulas_match_kruskal(seed, n, W, p):
    g = random_connected(np.random.default_rng(seed), n, W, p)
    cd = exact.component_curve(g, "distance")
    cs = exact.component_curve(g, "similarity")
    assert exact.formula_cost_distance(cd, n) == exact.exact_cost_distance(g)
    assert exact.formula_cost_similarity(cs, n) == exact.exact_cost_similarity(g)
    assert exact.mst_weight_from_curve(cd, n) == exact.kruskal(g).total
    assert exact.maxst_weight_from_curve(cs, n) == exact.kruskal(g, maximize=True).total
    assert exact.exact_cost_similarity(g) >= n * (n - 1) // 2
    assert exact.profile_total(exact.exact_profile(g, "distance")) == exact.exact_cost_distance(g)
    assert exact.profile_total(exact.exact_profile(g, "similarity")) == exact.exact_cost_similarity(g)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), W=st.integers(1, 15))
def test_profile_closed_forms(seed, n, W):
    g = random_connected(np.random.default_rng(seed), n, W, 0.2)
    pd = exact.exact_profile(g, "distance")
    ps = exact.exact_profile(g, "similarity")
    cd = exact.component_curve(g, "distance")
    cs = exact.component_curve(g, "similarity")
    for j in range(1, g.W + 1):
        assert exact.profile_at_curve_distance(cd, j) == pd[cd[j] - 1]
        assert exact.profile_at_curve_similarity(cs, j) == ps[cs[j] - 1]
    assert pd[-1] == 0 and ps[-1] == 0
    assert np.all(np.diff(pd) <= 0) and np.all(np.diff(ps) <= 0)
