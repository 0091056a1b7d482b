from __future__ import annotations

import csv

import pytest

from dpcut import (
    EPSILON_SWEEP,
    CSV_FIELDS,
    build_graph,
    build_instance,
    run_experiment,
    synthetic_standin,
    terminal_cut_baseline,
    write_csv,
)


@pytest.fixture(scope="module")
def standin():
    return synthetic_standin(200, 1500, seed=1)


class TestSyntheticStandin:
    def test_shape_and_determinism(self, standin):
        assert standin.n == 200
        assert len(standin.edges) == 1500
        again = synthetic_standin(200, 1500, seed=1)
        assert again.edges == standin.edges

    def test_unit_weights(self, standin):
        unit = 1 << standin.scale.shift
        assert all(w == unit for w in standin.edges.values())

    def test_heavy_tailed_degrees(self, standin):
        degs = sorted(
            (sum(1 for e in standin.edges if v in e) for v in range(standin.n)),
            reverse=True,
        )
        # a handful of hubs carry far more than the mean degree
        mean = 2 * 1500 / 200
        assert degs[0] > 4 * mean
        assert degs[-1] < mean

    def test_default_size(self):
        g = synthetic_standin()
        assert (g.n, len(g.edges)) == (1005, 25571)

    def test_validation(self):
        with pytest.raises(ValueError):
            synthetic_standin(1, 1)
        with pytest.raises(ValueError):
            synthetic_standin(10, 100)


class TestBuildInstance:
    def test_contraction_sizes(self):
        base = synthetic_standin()
        g, s, t = build_instance(base, seed=3)
        # two disjoint samples of 100 nodes each collapse to one node apiece
        assert g.n == 1005 - 2 * 99
        assert g.terminals == (s, t)
        assert s != t

    def test_weight_redraw_mean(self):
        # contracting single nodes relabels without merging, so the redrawn
        # per-edge mean is observable directly: Exp(40) rounded, min 1
        base = synthetic_standin()
        g, _, _ = build_instance(base, contract_fraction=0.001, seed=3)
        assert len(g.edges) == len(base.edges)
        ws = [w >> g.scale.shift for w in g.edges.values()]
        mean = sum(ws) / len(ws)
        assert abs(mean - 40.0) <= 0.05 * 40.0
        assert min(ws) >= 1

    def test_deterministic(self, standin):
        a = build_instance(standin, seed=12)
        b = build_instance(standin, seed=12)
        assert a[0].edges == b[0].edges and a[1:] == b[1:]
        c = build_instance(standin, seed=13)
        assert c[0].edges != a[0].edges

    def test_too_small_errors(self):
        base = build_graph(4, [(0, 1, 1), (2, 3, 1)])
        with pytest.raises(ValueError, match="empty terminal sample"):
            build_instance(base, contract_fraction=0.1)
        with pytest.raises(ValueError, match="disjoint"):
            build_instance(base, contract_fraction=0.8)
        with pytest.raises(ValueError, match="weight_mean"):
            build_instance(base, weight_mean=0.0)


class TestTerminalBaseline:
    def test_picks_cheaper_side(self):
        g = build_graph(4, [(0, 2, 5), (0, 3, 1), (1, 2, 2), (1, 3, 2)])
        assert terminal_cut_baseline(g, 0, 1) == g.degree_weight(1)
        assert terminal_cut_baseline(g, 1, 0) == g.degree_weight(1)


class TestRunExperiment:
    def test_row_grid(self, standin):
        rows = run_experiment(standin, [0.5, 1.0], 3, 2, seed=7)
        assert len(rows) == 6
        assert [r["epsilon"] for r in rows] == [0.5, 0.5, 0.5, 1.0, 1.0, 1.0]
        assert {r["instance_id"] for r in rows} == {0, 1, 2}
        assert all(set(r) == set(CSV_FIELDS) for r in rows)

    def test_deterministic(self, standin):
        a = run_experiment(standin, [0.5], 2, 3, seed=9)
        b = run_experiment(standin, [0.5], 2, 3, seed=9)
        assert a == b

    def test_instances_shared_across_epsilons(self, standin):
        rows = run_experiment(standin, [0.25, 1.0], 3, 2, seed=7)
        by_eps = {}
        for r in rows:
            by_eps.setdefault(r["epsilon"], {})[r["instance_id"]] = r
        for ii in range(3):
            lo, hi = by_eps[0.25][ii], by_eps[1.0][ii]
            assert lo["opt"] == hi["opt"]
            assert lo["terminal_rel_err"] == hi["terminal_rel_err"]
            # paired noise draws: weaker privacy never costs more error
            assert hi["private_rel_err_mean"] <= lo["private_rel_err_mean"]

    def test_zero_optimum_reported_absolute(self):
        base = build_graph(
            6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
        )
        rows = run_experiment(
            base, [1.0], 1, 2, seed=0, weight_mean=5.0, contract_fraction=1 / 6
        )
        assert rows[0]["error_kind"] == "absolute"
        assert rows[0]["opt"] == 0.0
        # absolute column reports plain weights, not ratios
        assert rows[0]["terminal_rel_err"] >= 1.0

    def test_argument_validation(self, standin):
        with pytest.raises(ValueError):
            run_experiment(standin, [1.0], 0, 1)
        with pytest.raises(ValueError):
            run_experiment(standin, [1.0], 1, 0)


class TestCsv:
    def test_round_trip(self, standin, tmp_path):
        rows = run_experiment(standin, [1.0], 2, 2, seed=3)
        path = tmp_path / "out.csv"
        write_csv(rows, path, "standin-200")
        lines = path.read_text().splitlines()
        assert lines[0] == "# base: standin-200"
        reader = csv.DictReader(lines[1:])
        assert reader.fieldnames == CSV_FIELDS
        back = list(reader)
        assert len(back) == 2
        assert float(back[0]["opt"]) == rows[0]["opt"]


class TestSweepGrid:
    def test_epsilon_sweep_shape(self):
        assert len(EPSILON_SWEEP) == 15
        assert EPSILON_SWEEP[0] == pytest.approx(1 / 15)
        assert EPSILON_SWEEP[-1] == 1.0
        assert all(a < b for a, b in zip(EPSILON_SWEEP, EPSILON_SWEEP[1:]))
