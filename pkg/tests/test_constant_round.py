"""Tests for the constant-round ER sort and its retry wrapper."""

import math

import pytest

from comparison import RunMetrics, make_truth_oracle, validate_er_round
from comparison.oracle import GroundTruth
from parallel import ConstantRoundParams, er_constant_retry, er_constant_sort
from utils.errors import ConfigError, ConstantRoundFailure


class TestConstantRoundParams:
    """Test cases for parameter validation."""

    def test_d_defaults_to_computed(self):
        assert ConstantRoundParams(0.4).d == 49
        assert ConstantRoundParams(0.4, override_d=7).d == 7

    @pytest.mark.parametrize("lam", [0.0, 0.41, 1.0])
    def test_lambda_range(self, lam):
        with pytest.raises(ConfigError):
            ConstantRoundParams(lam)

    def test_override_d_positive(self):
        with pytest.raises(ConfigError):
            ConstantRoundParams(0.3, override_d=0)

    def test_cycles_capped_for_small_n(self):
        """A computed d never asks for more arcs than there are pairs."""
        assert ConstantRoundParams(0.4).cycles_for(30) == 15
        assert ConstantRoundParams(0.4).cycles_for(31) == 15
        assert ConstantRoundParams(0.4).cycles_for(1000) == 49
        assert ConstantRoundParams(0.4, override_d=40).cycles_for(30) == 40


class TestErConstantSort:
    """Test cases for a single constant-round attempt."""

    def test_three_equal_classes(self, sized_truth):
        """Three classes of n/3 sort exactly with legal rounds."""
        truth = sized_truth([100, 100, 100], seed=1)
        metrics = RunMetrics(schedules=[])
        params = ConstantRoundParams(1 / 3)
        outcome = er_constant_sort(make_truth_oracle(truth), params, rng_seed=3, metrics=metrics)

        assert outcome.groups() == truth.classes()
        assert all(validate_er_round(s) for s in metrics.schedules)
        details = outcome.details
        assert details['d'] == params.d
        assert details['step2_rounds'] <= 2 * params.d
        assert metrics.rounds == details['step2_rounds'] + sum(details['component_rounds'])
        assert all(size >= params.component_threshold(300) for size in details['kept_components'])

    def test_rounds_do_not_grow_with_n(self, sized_truth):
        """Round count stays under an n-free ceiling."""
        params = ConstantRoundParams(1 / 3, override_d=20)
        # step 2 plus, per component, ceil((1 - lambda/8) / (lambda/8)) batches
        ceiling = 2 * params.d + 3 * math.ceil((1 - params.lambda_frac / 8) / (params.lambda_frac / 8))
        for n in (300, 1200):
            truth = sized_truth([n // 3] * 3, seed=n)
            outcome = er_constant_sort(make_truth_oracle(truth), params, rng_seed=7)
            assert outcome.groups() == truth.classes()
            assert outcome.metrics.rounds <= ceiling

    def test_deterministic_under_seed(self, sized_truth):
        """Same seed, same cost."""
        truth = sized_truth([40, 40, 40], seed=2)
        params = ConstantRoundParams(0.3, override_d=20)
        first = er_constant_sort(make_truth_oracle(truth), params, rng_seed=11)
        second = er_constant_sort(make_truth_oracle(truth), params, rng_seed=11)
        assert first.metrics.per_round_sizes == second.metrics.per_round_sizes

    def test_many_singletons_fail(self, sized_truth):
        """A hundred singleton classes cannot be resolved from H_d alone."""
        truth = sized_truth([100] + [1] * 100, seed=4)
        with pytest.raises(ConstantRoundFailure) as excinfo:
            er_constant_sort(make_truth_oracle(truth), ConstantRoundParams(0.4), rng_seed=1)
        assert excinfo.value.lambda_frac == 0.4
        assert excinfo.value.unresolved_groups > 0

    @pytest.mark.parametrize("labels", [(0,), (0, 0), (0, 1)])
    def test_tiny_inputs(self, labels):
        """n < 3 is sorted directly."""
        truth = GroundTruth(labels)
        outcome = er_constant_sort(make_truth_oracle(truth), ConstantRoundParams(0.4), rng_seed=0)
        assert outcome.groups() == truth.classes()


class TestErConstantRetry:
    """Test cases for the halving retry."""

    def test_succeeds_on_balanced_input(self, sized_truth):
        truth = sized_truth([90, 90, 90], seed=5)
        outcome = er_constant_retry(make_truth_oracle(truth), rng_seed=2, override_d=20)
        assert outcome.groups() == truth.classes()
        assert outcome.details['attempts'] >= 1
        assert outcome.details['fallback'] is False

    def test_halves_until_singletons_are_kept(self, sized_truth):
        """Singleton classes are only picked up once lambda * n / 8 drops below 1."""
        truth = sized_truth([100] + [1] * 100, seed=6)
        metrics = RunMetrics(schedules=[])
        outcome = er_constant_retry(make_truth_oracle(truth), rng_seed=3, override_d=10, metrics=metrics)
        assert outcome.groups() == truth.classes()
        assert outcome.details['attempts'] > 1
        assert outcome.details['final_lambda'] < 8 / truth.n
        assert all(validate_er_round(s) for s in metrics.schedules)
        assert outcome.metrics is metrics

    @pytest.mark.parametrize("n", [30, 60, 90, 99])
    def test_equal_thirds_at_small_n(self, sized_truth, n):
        """Balanced inputs succeed without the fallback even when H_d is dense."""
        truth = sized_truth([n // 3] * 3, seed=n)
        outcome = er_constant_retry(make_truth_oracle(truth), rng_seed=1)
        assert outcome.groups() == truth.classes()
        assert outcome.details['fallback'] is False
        assert outcome.details['attempts'] >= 1

    def test_fallback_only_below_one_over_n(self, random_truth):
        """Starting under 1/n goes straight to er_sort."""
        truth = random_truth(50, 3, 0)
        outcome = er_constant_retry(make_truth_oracle(truth), rng_seed=0, start_lambda=0.01)
        assert outcome.details['attempts'] == 0
        assert outcome.details['fallback'] is True
        assert outcome.groups() == truth.classes()


@pytest.mark.slow
class TestRoundsIndependentOfN:
    """Test cases for the n-free round count at fixed lambda and d."""

    def test_step2_rounds_identical(self, sized_truth):
        params = ConstantRoundParams(1 / 3, override_d=20)
        totals = []
        kept_counts = []
        for n in (999, 9999, 99999):
            truth = sized_truth([n // 3] * 3, seed=n)
            outcome = er_constant_sort(make_truth_oracle(truth), params, rng_seed=7)
            assert outcome.groups() == truth.classes()
            # odd n: two halves of each cycle plus the closing arc
            assert outcome.details['step2_rounds'] == 3 * params.d
            totals.append(outcome.metrics.rounds)
            kept_counts.append(len(outcome.details['kept_components']))
        assert max(totals) - min(totals) <= max(kept_counts)


@pytest.mark.slow
class TestMixedProfiles:
    """Two hundred seeded instances through the retry wrapper."""

    def test_er_constant_retry(self, mixed_truths):
        for index, truth in enumerate(mixed_truths(200, 104)):
            metrics = RunMetrics(schedules=[])
            outcome = er_constant_retry(
                make_truth_oracle(truth), rng_seed=index, override_d=10, metrics=metrics
            )
            assert outcome.groups() == truth.classes()
            assert all(validate_er_round(s) for s in metrics.schedules)
