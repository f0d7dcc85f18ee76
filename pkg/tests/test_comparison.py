"""Tests for oracles, round schedules and accounting."""

import numpy as np
import pytest

from comparison import (
    ComparisonResult,
    GroundTruth,
    ReadMode,
    RecordingOracle,
    RoundSchedule,
    RunMetrics,
    canonical_pair,
    execute_round,
    make_truth_oracle,
    validate_cr_round,
    validate_er_round,
)
from utils.errors import ConfigError, IllegalRoundError


class TestGroundTruth:
    """Test cases for GroundTruth."""

    def test_counts(self):
        """k, ell and class sizes follow the labels."""
        truth = GroundTruth((0, 1, 0, 2, 1, 0))
        assert truth.n == 6
        assert truth.k == 3
        assert truth.ell == 1
        assert truth.class_sizes() == {0: 3, 1: 2, 2: 1}

    def test_classes_ordered_by_smallest_member(self):
        """Classes come back sorted by their first element."""
        truth = GroundTruth((5, 3, 5, 3, 9))
        assert truth.classes() == [[0, 2], [1, 3], [4]]

    def test_numpy_labels_normalised(self):
        """Array input becomes a tuple of plain ints."""
        truth = GroundTruth(np.array([1, 1, 0]))
        assert truth.labels == (1, 1, 0)
        assert all(type(label) is int for label in truth.labels)

    def test_empty_rejected(self):
        """An empty labeling is a config error."""
        with pytest.raises(ConfigError):
            GroundTruth(())


class TestTruthOracle:
    """Test cases for the ground-truth oracle."""

    def test_answers_follow_labels(self):
        """SAME iff labels match."""
        oracle = make_truth_oracle(GroundTruth((0, 1, 0)))
        assert oracle.n == 3
        assert oracle.compare(0, 2) is ComparisonResult.SAME
        assert oracle.compare(0, 1) is ComparisonResult.DIFFERENT

    def test_recording_oracle_logs_in_order(self):
        """Every query is logged with its answer."""
        oracle = RecordingOracle(make_truth_oracle(GroundTruth((0, 0, 1))))
        oracle.compare(0, 1)
        oracle.compare(1, 2)
        assert oracle.log == [
            (0, 1, ComparisonResult.SAME),
            (1, 2, ComparisonResult.DIFFERENT),
        ]


class TestRoundSchedule:
    """Test cases for schedules and legality checks."""

    def test_canonical_and_deduplicated(self):
        """Pairs are ordered smaller id first and repeated once."""
        schedule = RoundSchedule.from_pairs([(3, 1), (1, 3), (0, 2)])
        assert schedule.pairs == ((1, 3), (0, 2))
        assert len(schedule) == 2

    def test_self_pair_rejected(self):
        """An element cannot be compared with itself."""
        with pytest.raises(IllegalRoundError):
            canonical_pair(4, 4)

    def test_er_legality(self):
        """ER rounds need disjoint pairs."""
        assert validate_er_round(RoundSchedule.from_pairs([(0, 1), (2, 3)]))
        assert not validate_er_round(RoundSchedule.from_pairs([(0, 1), (1, 2)]))

    def test_cr_legality(self):
        """CR rounds may reuse elements but fit in n processors."""
        schedule = RoundSchedule.from_pairs([(0, 1), (0, 2), (0, 3)])
        assert validate_cr_round(schedule, 3)
        assert not validate_cr_round(schedule, 2)


class TestExecuteRound:
    """Test cases for executing rounds against an oracle."""

    def setup_method(self):
        self.oracle = make_truth_oracle(GroundTruth((0, 1, 0, 1)))

    def test_results_and_accounting(self):
        """A round returns one answer per pair and counts once."""
        metrics = RunMetrics(schedules=[])
        schedule = RoundSchedule.from_pairs([(0, 2), (1, 3)])
        results = execute_round(self.oracle, schedule, metrics, mode=ReadMode.ER)
        assert results == [ComparisonResult.SAME, ComparisonResult.SAME]
        assert metrics.rounds == 1
        assert metrics.total_comparisons == 2
        assert metrics.schedules == [schedule]
        assert metrics.is_consistent()

    def test_empty_round_not_counted(self):
        """Rounds without comparisons are not steps."""
        metrics = RunMetrics()
        assert execute_round(self.oracle, RoundSchedule(), metrics, mode=ReadMode.ER) == []
        assert metrics.rounds == 0
        assert metrics.per_round_sizes == []

    def test_er_violation_raises(self):
        """A repeated element in an ER round is illegal."""
        schedule = RoundSchedule.from_pairs([(0, 1), (1, 2)])
        with pytest.raises(IllegalRoundError, match="ER round"):
            execute_round(self.oracle, schedule, RunMetrics(), mode=ReadMode.ER)

    def test_cr_budget_raises(self):
        """More comparisons than processors is illegal."""
        schedule = RoundSchedule.from_pairs([(0, 1), (0, 2), (0, 3)])
        with pytest.raises(IllegalRoundError, match="CR round"):
            execute_round(self.oracle, schedule, RunMetrics(), mode=ReadMode.CR, processors=2)

    def test_cr_round_within_budget(self):
        """Concurrent reads of one element are fine in CR mode."""
        metrics = RunMetrics()
        schedule = RoundSchedule.from_pairs([(0, 1), (0, 2), (0, 3)])
        execute_round(self.oracle, schedule, metrics, mode=ReadMode.CR)
        assert metrics.per_round_sizes == [3]

    def test_unchecked_mode(self):
        """mode=None skips legality checks."""
        metrics = RunMetrics()
        schedule = RoundSchedule.from_pairs([(0, 1), (1, 2)])
        execute_round(self.oracle, schedule, metrics)
        assert metrics.total_comparisons == 2
