"""Detector thresholds, decisions, budgets, and exact-risk comparisons."""

import math
from fractions import Fraction

import numpy as np
import pytest

from plantedlab import (
    BudgetExceededError,
    DetectorConfig,
    Graph,
    ModelParams,
    Observation,
    ScanBudgetExceededError,
    Verdict,
    complete_graph,
    count_test,
    degree_condition_satisfied,
    degree_condition_value,
    degree_test,
    likelihood_ratio_test,
    make_family,
    sample_null,
    scan_test,
    scan_test_over_pattern,
    stream,
)

from oracles import (
    all_pairs,
    brute_scan_statistic,
    exact_distributions,
    exact_risk,
    random_graph,
)

TRIANGLE = complete_graph(3)
K4_PENDANT = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])


def mask_to_observation(mask: int, n: int) -> Observation:
    a = np.zeros((n, n), dtype=bool)
    for i, (u, v) in enumerate(all_pairs(n)):
        if mask >> i & 1:
            a[u, v] = a[v, u] = True
    return Observation(a)


def all_observations(n: int):
    for mask in range(1 << math.comb(n, 2)):
        yield mask, mask_to_observation(mask, n)


class TestVerdict:
    def test_invariant_enforced(self):
        Verdict(1, 5.0, 3.0)
        Verdict(0, 1.0, 3.0)
        with pytest.raises(ValueError):
            Verdict(0, 5.0, 3.0)
        with pytest.raises(ValueError):
            Verdict(1, 1.0, 3.0)


class TestCountTest:
    def test_threshold_formula(self):
        params = ModelParams(n=6, p=0.9, q=0.3, pattern=TRIANGLE)
        v = count_test(Observation.from_graph(complete_graph(6)), params)
        assert v.threshold == 15 * 0.3 + 3 * 0.6 / 2
        assert v.statistic == 15.0 and v.decision == 1

    def test_empty_observation_accepts(self):
        params = ModelParams(n=6, p=0.9, q=0.1, pattern=TRIANGLE)
        v = count_test(Observation(np.zeros((6, 6), dtype=bool)), params)
        assert v.decision == 0 and v.statistic == 0.0

    def test_tie_rejects(self):
        # q = p = 0.5 puts the threshold exactly at 3 observed edges
        params = ModelParams(n=4, p=0.5, q=0.5, pattern=make_family("path:2"))
        obs = Observation.from_graph(make_family("path:3"))
        v = count_test(obs, params)
        assert v.statistic == v.threshold == 3.0
        assert v.decision == 1


class TestDegreeTest:
    def test_threshold_formula(self):
        pattern = make_family("star:4")
        params = ModelParams(n=10, p=0.8, q=0.2, pattern=pattern)
        obs = Observation.from_graph(make_family("star:9"))
        v = degree_test(obs, params)
        assert v.statistic == 9.0
        assert v.threshold == pytest.approx(9 * 0.2 + 4 * 0.6 / 2)
        assert v.decision == 1

    def test_empty_observation_accepts(self):
        params = ModelParams(n=6, p=0.9, q=0.1, pattern=TRIANGLE)
        v = degree_test(Observation(np.zeros((6, 6), dtype=bool)), params)
        assert v.decision == 0

    def test_condition_diagnostic(self):
        # the guarantee quantity for the large star configuration: ~18 > 16
        params = ModelParams(n=2000, p=0.9, q=0.2, pattern=make_family("star:300"))
        value = degree_condition_value(params)
        chi2 = 0.7**2 / (0.2 * 0.8)
        expected = min(
            300**2 * chi2 / (2000 * math.log(2000)), 300 * 0.7 / math.log(2000)
        )
        assert value == pytest.approx(expected)
        assert 16 < value < 20
        assert degree_condition_satisfied(params)
        assert not degree_condition_satisfied(
            params, DetectorConfig(degree_threshold_constant=20)
        )


class TestScanTest:
    def test_planted_complete_pattern_saturates(self):
        params = ModelParams(n=10, p=1.0, q=0.05, pattern=complete_graph(4))
        a = np.zeros((10, 10), dtype=bool)
        for u in (2, 5, 6, 9):
            for v in (2, 5, 6, 9):
                if u != v:
                    a[u, v] = True
        v = scan_test(Observation(a), params)
        assert v.statistic == 6.0
        assert v.decision == 1

    def test_empty_observation_accepts(self):
        params = ModelParams(n=8, p=0.9, q=0.1, pattern=TRIANGLE)
        v = scan_test(Observation(np.zeros((8, 8), dtype=bool)), params)
        assert v.statistic == 0.0 and v.decision == 0

    def test_statistic_matches_brute_force_complete_target(self):
        rng = np.random.default_rng(600)
        for pattern in (TRIANGLE, complete_graph(4)):
            params = ModelParams(n=7, p=0.9, q=0.3, pattern=pattern)
            for k in range(8):
                obs = sample_null(7, 0.45, stream(601, k))
                got = scan_test(obs, params).statistic
                want = brute_scan_statistic(obs.adjacency, pattern)
                assert got == float(want)

    def test_statistic_matches_brute_force_general_target(self):
        # a path is its own densest subgraph, exercising the placement search
        pattern = make_family("path:3")
        params = ModelParams(n=7, p=0.9, q=0.3, pattern=pattern)
        for k in range(8):
            obs = sample_null(7, 0.4, stream(602, k))
            got = scan_test(obs, params).statistic
            want = brute_scan_statistic(obs.adjacency, pattern)
            assert got == float(want)

    def test_scan_uses_densest_subgraph(self):
        # for K4 + pendant the scan target is the K4, so the threshold is
        # kappa * 6, not kappa * 7
        params = ModelParams(n=8, p=0.9, q=0.1, pattern=K4_PENDANT)
        obs = sample_null(8, 0.2, stream(603))
        v = scan_test(obs, params)
        assert v.threshold == pytest.approx(0.5 * (0.9 + 0.1) * 6)
        v_full = scan_test_over_pattern(obs, params)
        assert v_full.threshold == pytest.approx(0.5 * (0.9 + 0.1) * 7)

    def test_budget(self):
        params = ModelParams(n=30, p=0.9, q=0.1, pattern=complete_graph(10))
        obs = sample_null(30, 0.1, stream(604))
        with pytest.raises(ScanBudgetExceededError):
            scan_test(obs, params)

    def test_kappa_weight_moves_threshold(self):
        params = ModelParams(n=6, p=0.8, q=0.2, pattern=TRIANGLE)
        obs = sample_null(6, 0.3, stream(605))
        lo = scan_test(obs, params, DetectorConfig(scan_kappa_weight=0.9))
        hi = scan_test(obs, params, DetectorConfig(scan_kappa_weight=0.1))
        # weight is on q, so weight 0.9 leans low and 0.1 leans high
        assert lo.threshold == pytest.approx((0.9 * 0.2 + 0.1 * 0.8) * 3)
        assert hi.threshold == pytest.approx((0.1 * 0.2 + 0.9 * 0.8) * 3)
        assert lo.threshold < hi.threshold


class TestMonotonicity:
    def test_adding_edges_never_lowers_statistics(self):
        rng = np.random.default_rng(606)
        params = ModelParams(n=6, p=0.9, q=0.3, pattern=TRIANGLE)
        for _ in range(15):
            g = random_graph(rng, 6, 0.35)
            missing = [
                (u, v)
                for u, v in all_pairs(6)
                if not g.has_edge(u, v)
            ]
            if not missing:
                continue
            u, v = missing[rng.integers(0, len(missing))]
            bigger = Graph(6, list(g.edges) + [(u, v)])
            obs_small = Observation.from_graph(g)
            obs_big = Observation.from_graph(bigger)
            for test in (count_test, degree_test, scan_test):
                assert (
                    test(obs_big, params).statistic
                    >= test(obs_small, params).statistic
                )


class TestLikelihoodRatioTest:
    def test_single_edge_closed_form(self):
        edge = Graph(2, [(0, 1)])
        params = ModelParams(n=2, p=0.8, q=0.25, pattern=edge)
        present = likelihood_ratio_test(Observation.from_graph(edge), params)
        absent = likelihood_ratio_test(Observation(np.zeros((2, 2), bool)), params)
        assert present.statistic == Fraction(0.8) / Fraction(0.25)
        assert absent.statistic == (1 - Fraction(0.8)) / (1 - Fraction(0.25))
        assert present.decision == 1 and absent.decision == 0

    def test_degenerate_plant_always_rejects_on_tie(self):
        params = ModelParams(n=5, p=0.4, q=0.4, pattern=TRIANGLE)
        for k in range(5):
            obs = sample_null(5, 0.5, stream(607, k))
            v = likelihood_ratio_test(obs, params)
            assert v.statistic == 1 and v.decision == 1

    def test_vertex_budget(self):
        params = ModelParams(n=12, p=0.9, q=0.1, pattern=TRIANGLE)
        obs = sample_null(12, 0.1, stream(608))
        with pytest.raises(BudgetExceededError):
            likelihood_ratio_test(obs, params)

    def test_copy_budget(self):
        # path with 9 edges in K_10: 10!/2 placements > 10^6
        params = ModelParams(n=10, p=0.9, q=0.1, pattern=make_family("path:9"))
        obs = sample_null(10, 0.1, stream(609))
        with pytest.raises(BudgetExceededError):
            likelihood_ratio_test(obs, params)

    def test_exact_risk_dominance_small(self):
        # n=5, triangle: compare against count/degree/scan over all 1024 graphs
        n, p, q = 5, Fraction(9, 10), Fraction(3, 10)
        null, planted = exact_distributions(TRIANGLE, n, p, q)
        params = ModelParams(n=n, p=float(p), q=float(q), pattern=TRIANGLE)
        decisions = {name: [] for name in ("lrt", "count", "degree", "scan")}
        for _, obs in all_observations(n):
            decisions["lrt"].append(likelihood_ratio_test(obs, params).decision)
            decisions["count"].append(count_test(obs, params).decision)
            decisions["degree"].append(degree_test(obs, params).decision)
            decisions["scan"].append(scan_test(obs, params).decision)
        risks = {
            name: exact_risk(dec, null, planted) for name, dec in decisions.items()
        }
        for name in ("count", "degree", "scan"):
            assert risks["lrt"] <= risks[name]

    def test_scan_on_densest_beats_scan_on_pattern(self):
        # K4 + pendant at n=5: exact risks over all 1024 observations
        n, p, q = 5, Fraction(9, 10), Fraction(2, 10)
        null, planted = exact_distributions(K4_PENDANT, n, p, q)
        params = ModelParams(n=n, p=float(p), q=float(q), pattern=K4_PENDANT)
        dec_densest, dec_full = [], []
        for _, obs in all_observations(n):
            dec_densest.append(scan_test(obs, params).decision)
            dec_full.append(scan_test_over_pattern(obs, params).decision)
        assert exact_risk(dec_densest, null, planted) <= exact_risk(
            dec_full, null, planted
        )
