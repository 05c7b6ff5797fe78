"""Tests for the estimation pipeline and its verification oracles."""

import math

import numpy as np
import pytest

from evtrisk import (
    AssumptionViolation,
    FitError,
    RandomStream,
    TailParams,
    cvar,
    evt_estimate,
    extremal_semideviation,
    get_distribution,
    monte_carlo_semideviation,
    semideviation_by_quadrature,
    sort_and_summarize,
    tail_approximation_error,
    typical_semideviation,
    value_at_risk,
)
from helpers import exact_pareto2_params, random_params


class TestTypicalEstimator:
    def test_hand_value_m10(self):
        # alpha = 0.05, m = 10: the default keeps only the maximum
        s = sort_and_summarize(np.arange(1.0, 11.0))
        assert typical_semideviation(s, 0.05) == pytest.approx(0.45, rel=1e-14)

    def test_hand_value_m100(self):
        # alpha = 0.01, m = 100: top two order statistics enter
        s = sort_and_summarize(np.arange(1.0, 101.0))
        assert typical_semideviation(s, 0.01) == pytest.approx(0.98, rel=1e-14)

    def test_constant_sample_is_zero(self):
        s = sort_and_summarize(np.full(25, 4.0))
        assert typical_semideviation(s, 0.01) == 0.0

    def test_explicit_top_count(self):
        s = sort_and_summarize(np.arange(1.0, 21.0))
        # top 3 values 18, 19, 20 against mean 10.5
        want = (7.5 + 8.5 + 9.5) / 20.0
        assert typical_semideviation(s, 0.01, n_top=2) == pytest.approx(want, rel=1e-14)

    def test_nonnegative(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            s = sort_and_summarize(rng.normal(size=30))
            assert typical_semideviation(s, rng.uniform(0.01, 0.9)) >= 0.0

    def test_validation(self):
        s = sort_and_summarize(np.arange(1.0, 21.0))
        with pytest.raises(ValueError):
            typical_semideviation(s, 0.0)
        with pytest.raises(ValueError):
            typical_semideviation(s, 0.01, n_top=20)


class TestPipeline:
    def test_large_pareto2_sample(self):
        data = get_distribution("pareto2").sample(10_000, RandomStream(42))
        report = evt_estimate(data, alpha=0.01)
        assert abs(report.params.gamma - 0.5) < 0.1
        assert report.assumptions.all_hold()
        assert report.rho_evt == pytest.approx(0.18, rel=0.3)

    def test_constant_data_raises_fit_error(self):
        with pytest.raises(FitError):
            evt_estimate(np.full(20, 1.0), alpha=0.01)

    def test_large_alpha_flagged_not_raised(self):
        data = get_distribution("exponential1").sample(20, RandomStream(8))
        report = evt_estimate(data, alpha=0.5)
        assert report.assumptions.alpha_lt_k_over_m is False
        assert report.rho_evt is None
        assert report.var_tail is None
        assert report.rho_typical > 0.0

    def test_rho_evt_consistent_with_parts(self):
        data = get_distribution("gumbel").sample(500, RandomStream(12))
        report = evt_estimate(data, alpha=0.01)
        assert report.assumptions.all_hold()
        want = report.alpha * (report.cvar_tail - report.sample_mean)
        assert report.rho_evt == pytest.approx(want, rel=1e-14)
        assert report.var_tail == pytest.approx(
            value_at_risk(report.params, 0.01), rel=1e-14)

    def test_typical_uses_fit_exceedance_count(self):
        data = get_distribution("pareto2").sample(20, RandomStream(4))
        report = evt_estimate(data, alpha=0.01)
        sample = sort_and_summarize(data)
        assert report.rho_typical == pytest.approx(
            typical_semideviation(sample, 0.01, n_top=report.params.k), rel=1e-14)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            evt_estimate(np.arange(5.0), alpha=0.01)


class TestMonteCarloOracle:
    def test_uniform_half_level(self):
        # true value: integral_{1/2}^{1} (y - 1/2) dy = 1/8
        est, se = monte_carlo_semideviation(get_distribution("uniform01"), 0.5,
                                            100_000, RandomStream(60))
        assert abs(est - 0.125) <= 3.0 * se

    def test_pareto2_and_exponential(self):
        for name, want in (("pareto2", 0.18),
                           ("exponential1", math.log(100.0) / 100.0)):
            est, se = monte_carlo_semideviation(get_distribution(name), 0.01,
                                                200_000, RandomStream(61))
            assert abs(est - want) <= 3.0 * se

    def test_standard_error_scaling(self):
        # doubling the sample should shrink the error bar by about sqrt(2)
        dist = get_distribution("exponential1")
        ratios = []
        for seed in range(5):
            _, se_small = monte_carlo_semideviation(dist, 0.01, 10_000,
                                                    RandomStream(seed))
            _, se_big = monte_carlo_semideviation(dist, 0.01, 20_000,
                                                  RandomStream(1000 + seed))
            ratios.append(se_big / se_small)
        mean_ratio = float(np.mean(ratios))
        assert abs(mean_ratio - 1.0 / math.sqrt(2.0)) < 0.2 / math.sqrt(2.0)

    def test_minimum_sample_size(self):
        with pytest.raises(ValueError):
            monte_carlo_semideviation(get_distribution("gumbel"), 0.01, 999,
                                      RandomStream(1))


class TestQuadratureOracle:
    def test_pareto2_exact_case(self):
        got = semideviation_by_quadrature(exact_pareto2_params(), 0.01, 2.0)
        assert got == pytest.approx(0.18, rel=1e-9)

    def test_zero_at_cvar_mean(self):
        p = TailParams(k=5, m=40, gamma=0.3, threshold=2.0, scale=1.5)
        alpha = 0.05
        v = value_at_risk(p, alpha)
        got = semideviation_by_quadrature(p, alpha, v)
        want = alpha * (cvar(p, alpha) - v)
        assert got == pytest.approx(want, rel=1e-8)

    def test_matches_closed_form_randomized(self):
        rng = np.random.default_rng(71)
        for _ in range(200):
            p = random_params(rng)
            alpha = rng.uniform(1e-4, p.tail_fraction * 0.99)
            mean = value_at_risk(p, alpha) - abs(rng.normal()) * p.scale
            got = semideviation_by_quadrature(p, alpha, mean)
            want = extremal_semideviation(p, alpha, mean)
            assert got == pytest.approx(want, rel=1e-8)

    def test_raises_below_mean(self):
        p = TailParams(k=5, m=40, gamma=0.3, threshold=2.0, scale=1.5)
        v = value_at_risk(p, 0.05)
        with pytest.raises(AssumptionViolation):
            semideviation_by_quadrature(p, 0.05, v + 1.0)


class TestTailApproximationError:
    def test_exponential_tail_is_exact(self):
        dist = get_distribution("exponential1")
        p = TailParams(k=2, m=20, gamma=0.0, threshold=2.5, scale=1.0)
        grid = np.linspace(2.5, 2.5 + 15.0, 100)
        assert tail_approximation_error(dist, p, grid).max() <= 1e-14

    def test_pareto2_tail_is_exact(self):
        dist = get_distribution("pareto2")
        s = 3.0
        p = TailParams(k=2, m=20, gamma=0.5, threshold=s, scale=s / 2.0)
        grid = np.linspace(s, 60.0, 100)
        assert tail_approximation_error(dist, p, grid).max() <= 1e-14

    def test_zero_at_threshold(self):
        dist = get_distribution("gumbel")
        p = TailParams(k=2, m=20, gamma=0.0, threshold=4.0, scale=1.0)
        assert tail_approximation_error(dist, p, [4.0])[0] == 0.0

    def test_gumbel_error_small_but_nonzero(self):
        # the Gumbel tail is only asymptotically exponential, so the error
        # is positive yet tiny at a threshold this deep
        dist = get_distribution("gumbel")
        p = TailParams(k=2, m=20, gamma=0.0, threshold=4.0, scale=1.0)
        grid = np.linspace(4.0, 10.0, 50)
        errs = tail_approximation_error(dist, p, grid)
        assert errs.max() < 1e-3
        assert errs.max() > 0.0

    def test_rejects_points_outside_support(self):
        dist = get_distribution("uniform01")
        p = TailParams(k=2, m=20, gamma=-1.0, threshold=0.9, scale=0.1)
        with pytest.raises(ValueError):
            tail_approximation_error(dist, p, [0.5])
        with pytest.raises(ValueError):
            tail_approximation_error(dist, p, [1.0])
