from __future__ import annotations

import pytest

from dpcut import (
    NoiseSpec,
    RngStream,
    build_graph,
    cut_weight,
    dp_min_st_cut,
    dp_multiway,
    fx_value,
    min_st_cut_exact,
    multiway_batched,
    multiway_brute_force,
    multiway_isolation_baseline,
    multiway_recursive,
    num_levels,
    random_graph,
)

from conftest import multiway_instance


class _CountingSolver:
    def __init__(self):
        self.calls = 0

    def __call__(self, g, s, t):
        self.calls += 1
        return min_st_cut_exact(g, s, t)


def _check_valid(g, terminals, cut):
    k = len(terminals)
    assert len(cut.part) == g.n
    assert all(0 <= b < k for b in cut.part)
    for i, tm in enumerate(terminals):
        assert cut.part[tm] == i
    crossing = sorted(e for e in g.edges if cut.part[e[0]] != cut.part[e[1]])
    assert list(cut.cut_edges) == crossing
    assert cut.weight == sum(g.edges[e] for e in crossing)


class TestNumLevels:
    @pytest.mark.parametrize(
        "k,want", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)]
    )
    def test_values(self, k, want):
        assert num_levels(k) == want


class TestRecursive:
    def test_star(self, star_graph):
        cut = multiway_recursive(star_graph, [0, 1, 2])
        # the hub keeps its heaviest edge and joins terminal 2
        assert cut.part == (0, 1, 2, 2)
        assert fx_value(cut.weight, star_graph.scale) == 3

    def test_single_terminal(self, star_graph):
        cut = multiway_recursive(star_graph, [1])
        assert cut.part == (0, 0, 0, 0)
        assert cut.weight == 0 and cut.cut_edges == ()

    def test_two_terminals_is_min_cut(self):
        for seed in range(8):
            g = random_graph(9, 0.5, max_weight=7, seed=seed)
            cut = multiway_recursive(g, [0, 8])
            sol = min_st_cut_exact(g, 0, 8)
            assert cut.weight == sol.weight_original
            assert cut.part == tuple(0 if b else 1 for b in sol.side)

    def test_valid_partitions(self):
        for i in range(12):
            g, terms = multiway_instance(i)
            _check_valid(g, terms, multiway_recursive(g, terms))

    def test_call_count(self):
        g = random_graph(14, 0.5, max_weight=5, seed=3)
        for k in range(2, 10):
            solver = _CountingSolver()
            multiway_recursive(g, list(range(k)), solver)
            assert solver.calls == k - 1

    def test_terminal_validation(self, star_graph):
        with pytest.raises(ValueError, match="at least one"):
            multiway_recursive(star_graph, [])
        with pytest.raises(ValueError, match="distinct"):
            multiway_recursive(star_graph, [0, 0])
        with pytest.raises(ValueError, match="range"):
            multiway_recursive(star_graph, [0, 9])


class TestBatched:
    def test_matches_recursive(self):
        for i in range(16):
            g, terms = multiway_instance(i)
            a = multiway_recursive(g, terms)
            b = multiway_batched(g, terms)
            assert a.part == b.part
            assert a.weight == b.weight

    def test_call_count_is_level_count(self):
        g = random_graph(16, 0.45, max_weight=5, seed=8)
        for k in range(2, 10):
            solver = _CountingSolver()
            multiway_batched(g, list(range(k)), solver)
            assert solver.calls == num_levels(k)

    def test_star(self, star_graph):
        cut = multiway_batched(star_graph, [0, 1, 2])
        assert cut.part == (0, 1, 2, 2)


class TestApproximation:
    def test_within_factor_two_of_optimum(self):
        for i in range(20):
            g, terms = multiway_instance(i)
            opt = multiway_brute_force(g, terms)
            alg = multiway_batched(g, terms)
            assert opt.weight <= alg.weight <= 2 * opt.weight

    def test_brute_force_guard(self):
        g = random_graph(40, 0.2, seed=0)
        with pytest.raises(ValueError, match="10\\*\\*7"):
            multiway_brute_force(g, [0, 1, 2, 3, 4])


class TestDpMultiway:
    def test_k2_reduces_to_single_dp_cut(self):
        # with the same split stream, two terminals must reproduce the
        # plain private s-t mechanism bit for bit
        g = random_graph(10, 0.5, max_weight=6, seed=21)
        spec = NoiseSpec(epsilon=0.8)
        res = dp_multiway(g, [0, 9], spec, RngStream(5))
        sol = dp_min_st_cut(g, 0, 9, spec, RngStream(5).split(1)[0])
        assert res.cut.part == tuple(0 if b else 1 for b in sol.side)
        assert res.cut.weight == sol.weight_original
        assert res.levels == 1
        assert res.total_epsilon == spec.epsilon

    def test_privacy_cost_composes_per_level(self):
        g = random_graph(12, 0.5, max_weight=6, seed=2)
        for k in (2, 3, 4, 5, 8):
            res = dp_multiway(g, list(range(k)), NoiseSpec(epsilon=0.5, seed=k))
            assert res.levels == num_levels(k)
            assert res.total_epsilon == pytest.approx(0.5 * num_levels(k))

    def test_valid_and_deterministic(self):
        g, terms = multiway_instance(3)
        spec = NoiseSpec(epsilon=1.0, seed=9)
        a = dp_multiway(g, terms, spec)
        b = dp_multiway(g, terms, spec)
        assert a == b
        _check_valid(g, terms, a.cut)

    def test_high_epsilon_tracks_exact(self, star_graph):
        # at epsilon 10 the noise is tiny, so most runs hit a weight within
        # twice the optimum (the non-private guarantee)
        opt = multiway_brute_force(star_graph, [0, 1, 2]).weight
        ok = 0
        rng = RngStream(17)
        for _ in range(100):
            res = dp_multiway(star_graph, [0, 1, 2], NoiseSpec(epsilon=10.0), rng)
            ok += res.cut.weight <= 2 * opt
        assert ok >= 90

    def test_weight_is_evaluated_on_input_graph(self):
        g, terms = multiway_instance(5)
        res = dp_multiway(g, terms, NoiseSpec(epsilon=2.0, seed=4))
        side_cost = sum(
            w for (u, v), w in g.edges.items() if res.cut.part[u] != res.cut.part[v]
        )
        assert res.cut.weight == side_cost


class TestIsolationBaseline:
    def test_call_count(self):
        g = random_graph(12, 0.5, max_weight=5, seed=6)
        for k in (2, 3, 4, 6):
            solver = _CountingSolver()
            multiway_isolation_baseline(g, list(range(k)), solver)
            assert solver.calls == k

    def test_two_terminals_weight_matches_min_cut(self):
        # with k=2 the assignment collapses to the first isolating cut, so
        # the baseline is exactly optimal there
        for seed in range(6):
            g = random_graph(8, 0.5, max_weight=6, seed=40 + seed)
            cut = multiway_isolation_baseline(g, [0, 7])
            assert cut.weight == min_st_cut_exact(g, 0, 7).weight_original

    def test_valid_partitions(self):
        for i in range(10):
            g, terms = multiway_instance(i)
            _check_valid(g, terms, multiway_isolation_baseline(g, terms))

    def test_star(self, star_graph):
        cut = multiway_isolation_baseline(star_graph, [0, 1, 2])
        _check_valid(star_graph, [0, 1, 2], cut)
        assert fx_value(cut.weight, star_graph.scale) == 3


class TestSerialization:
    def test_multiway_json(self, star_graph):
        cut = multiway_batched(star_graph, [0, 1, 2])
        j = cut.to_json()
        assert j["part"] == [0, 1, 2, 2]
        assert j["weight"] == "3"
        assert [0, 3] in j["cut_edges"]

    def test_dp_json(self, star_graph):
        res = dp_multiway(star_graph, [0, 1, 2], NoiseSpec(epsilon=1.5, seed=1))
        j = res.to_json()
        assert j["levels"] == 2
        assert j["total_privacy_cost"] == pytest.approx(3.0)
