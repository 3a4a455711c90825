import math

import numpy as np
import pytest

from sublinear_slc import exact
from sublinear_slc.errors import ParamOutOfTheoremRange
from sublinear_slc.graph import Mode
from sublinear_slc.hardness import (
    HardInstance,
    closed_form_cost,
    gen_hard_instance,
    promotion_rate,
    separation_bounds,
)


def path_only(n, W, T, mode):
    from sublinear_slc.graph import build_graph
    g = build_graph([(i, i + 1, W if i < T else 1) for i in range(n - 1)])
    return HardInstance(g, 0, Mode.parse(mode), T, promotion_rate(W, Mode.parse(mode)), 0.3, W)


class TestClosedForm:
    def test_all_light(self):
        inst = path_only(50, 10, 0, "distance")
        assert closed_form_cost(inst) == 50 * 49 // 2 == exact.exact_cost_distance(inst.graph)

    def test_all_heavy(self):
        n, W = 50, 10
        inst = path_only(n, W, n - 1, "distance")
        assert closed_form_cost(inst) == W * n * (n - 1) // 2 == exact.exact_cost_distance(inst.graph)

    @pytest.mark.parametrize("mode", ["distance", "similarity"])
    @pytest.mark.parametrize("seed", range(10))
    def test_matches_exact(self, mode, seed):
        rng = np.random.default_rng(seed)
        d = float(rng.choice([2 - 2 / 200, 3.0, 4.5]))
        inst = gen_hard_instance(200, 20, 0.3, d, mode, seed % 2, rng)
        assert closed_form_cost(inst) == exact.exact_cost(inst.graph, mode)


class TestInstances:
    @pytest.mark.parametrize("mode", ["distance", "similarity"])
    def test_padding_is_neutral(self, mode):
        rng = np.random.default_rng(0)
        inst = gen_hard_instance(300, 20, 0.3, 5.0, mode, 0, rng)
        path_weights = sorted([20] * inst.T_W + [1] * (299 - inst.T_W))
        assert exact.kruskal(inst.graph, maximize=mode == "similarity").weights.tolist() == (
            path_weights if mode == "distance" else path_weights[::-1])

    @pytest.mark.parametrize("d", [2 - 2 / 400, 3.0, 3.7, 6.0])
    def test_degrees(self, d):
        inst = gen_hard_instance(400, 20, 0.3, d, "distance", 1, np.random.default_rng(1))
        g = inst.graph
        assert g.m == max(399, int(round(d * 400 / 2)))
        if d > 2:
            assert set(np.unique(g.degrees)) <= {math.floor(d), math.ceil(d)}
        assert g.is_connected

    def test_rejections(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ParamOutOfTheoremRange):
            gen_hard_instance(1000, 20, 0.0, 2, "distance", 0, rng)
        with pytest.raises(ParamOutOfTheoremRange):
            gen_hard_instance(1000, 20, 0.6, 2, "distance", 0, rng)
        with pytest.raises(ParamOutOfTheoremRange):
            gen_hard_instance(1000, 4, 0.3, 2, "distance", 0, rng)
        with pytest.raises(ParamOutOfTheoremRange):
            gen_hard_instance(1000, 10, 0.3, 2, "similarity", 0, rng)
        with pytest.raises(ParamOutOfTheoremRange):
            gen_hard_instance(1000, 20, 0.3, 1.0, "distance", 0, rng)
        with pytest.raises(ValueError):
            gen_hard_instance(1000, 20, 0.3, 2, "distance", 2, rng)

    @pytest.mark.parametrize("family,sign", [(0, 1), (1, -1)])
    def test_T_W_concentrates(self, family, sign):
        n, W, e = 100_000, 100, 0.3
        q = promotion_rate(W, Mode.DISTANCE)
        p = q * (1 + sign * e)
        rng = np.random.default_rng(family)
        Ts = [gen_hard_instance(n, W, e, 2 - 2 / n, "distance", family, rng).T_W for _ in range(100)]
        mean = (n - 1) * p
        sd = math.sqrt((n - 1) * p * (1 - p) / 100)
        assert abs(np.mean(Ts) - mean) <= 3 * sd

    def test_labels_hidden(self):
        inst = gen_hard_instance(500, 20, 0.3, 2 - 2 / 500, "distance", 0, np.random.default_rng(3))
        u, v, _ = inst.graph.edges()
        assert np.mean(np.abs(u - v) == 1) < 0.1


@pytest.mark.parametrize("mode", ["distance", "similarity"])
def test_separation_margin(mode):
    b = separation_bounds(100_000, 100, 0.3, mode)
    assert b.gap >= b.margin > 0
