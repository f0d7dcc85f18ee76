"""Tests for the experiment runner, fits and result files."""

import pytest

from bench import (
    ExperimentConfig,
    ResultRow,
    check_resources,
    fit_groups,
    linear_fit,
    read_results,
    round_floor,
    run_cell,
    run_experiment,
    seed_for,
    write_results,
)
from comparison import make_truth_oracle
from distributions import Geometric, Poisson, Uniform, Zeta, realize_labels, sample_ranks
from roundrobin import round_robin_sort
from utils.errors import ConfigError, ResourceGuardError, ResultsWriteError


def _config(**overrides):
    values = dict(algorithm="round-robin", distribution=Geometric(0.5), n_grid=(50, 100, 150), trials=2)
    values.update(overrides)
    return ExperimentConfig(**values)


def _row(n, comparisons, params="p=0.5"):
    return ResultRow("er", "geometric", params, n, 0, 1, comparisons, 3)


class TestExperimentConfig:
    """Test cases for grid validation."""

    @pytest.mark.parametrize("overrides", [
        {'algorithm': 'bubble'},
        {'n_grid': ()},
        {'n_grid': (100, 50)},
        {'n_grid': (0, 10)},
        {'trials': 0},
        {'workers': 0},
        {'distribution': None},
        {'distribution': None, 'adversary': ('g', 2)},
        {'distribution': None, 'adversary': ('f', 0)},
    ])
    def test_rejected(self, overrides):
        with pytest.raises(ConfigError):
            _config(**overrides)

    def test_labels(self):
        assert _config().distribution_name == "geometric"
        assert _config().params_label == "p=0.5"
        adversarial = _config(distribution=None, adversary=('f', 2))
        assert adversarial.distribution_name == "adversary"
        assert adversarial.params_label == "f=2"


class TestRunner:
    """Test cases for seeding and running cells."""

    def test_seed_is_stable_per_cell(self):
        assert seed_for(0, 100, 1) == seed_for(0, 100, 1)
        assert seed_for(0, 100, 1) != seed_for(0, 100, 2)
        assert seed_for(0, 100, 1) != seed_for(1, 100, 1)

    def test_row_matches_direct_run(self):
        """A cell reproduces a hand-built run with the same seed."""
        config = _config(n_grid=(80,), trials=1)
        row = run_cell(config, 80, 0)

        truth = realize_labels(sample_ranks(Geometric(0.5), 80, seed_for(0, 80, 0)))
        direct = round_robin_sort(make_truth_oracle(truth))
        assert row.comparisons == direct.comparisons
        assert row.rounds == 0
        assert row.seed == seed_for(0, 80, 0)
        assert row.wall_seconds == 0.0

    @pytest.mark.parametrize("algorithm", ["cr", "er", "er-constant"])
    def test_parallel_algorithms_report_rounds(self, algorithm):
        config = _config(algorithm=algorithm, distribution=Uniform(3), n_grid=(90,), trials=1, override_d=8)
        row = run_cell(config, 90, 0)
        assert row.rounds >= 1
        assert row.comparisons >= 90 - 3

    def test_rows_ordered_and_reproducible(self):
        rows = run_experiment(_config())
        assert [(row.n, row.trial) for row in rows] == [(n, t) for n in (50, 100, 150) for t in range(2)]
        assert run_experiment(_config()) == rows

    def test_workers_do_not_change_rows(self):
        assert run_experiment(_config(workers=2)) == run_experiment(_config(workers=1))

    def test_timing_recorded_on_request(self):
        rows = run_experiment(_config(n_grid=(60,), trials=1, timing=True))
        assert rows[0].wall_seconds >= 0.0

    def test_resource_guard(self):
        config = _config(distribution=Uniform(10), n_grid=(1000,), trials=10, max_comparisons=1000)
        with pytest.raises(ResourceGuardError):
            check_resources(config)
        with pytest.raises(ResourceGuardError):
            run_experiment(config)

    def test_adversary_row(self):
        """f=2 at n=64: certificate accepted above the n^2 / (64 f) floor."""
        config = _config(algorithm="er", distribution=None, adversary=('f', 2), n_grid=(64,), trials=1)
        row = run_experiment(config)[0]
        assert row.distribution == "adversary"
        assert row.certificate == "accept"
        assert row.comparisons >= 32

    def test_round_floor(self):
        assert round_floor(10, 3) == 4
        assert round_floor(9, 3) == 3
        with pytest.raises(ConfigError):
            round_floor(5, 0)


class TestFitting:
    """Test cases for least-squares fits."""

    def test_exact_line(self):
        fit = linear_fit([_row(n, 2 * n) for n in (100, 200, 300, 400)])
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(0.0, abs=1e-6)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.relative_spread == pytest.approx(0.0, abs=1e-9)
        assert fit.points == 4

    def test_constant(self):
        fit = linear_fit([_row(n, 7) for n in (10, 20, 30)])
        assert fit.slope == pytest.approx(0.0, abs=1e-9)
        assert fit.r_squared == 1.0

    def test_needs_three_sizes(self):
        with pytest.raises(ConfigError):
            linear_fit([_row(10, 1), _row(10, 2), _row(20, 3)])

    def test_groups(self):
        rows = [_row(n, n) for n in (1, 2, 3)] + [_row(n, n, params="p=0.1") for n in (1, 2)]
        fits = fit_groups(rows)
        assert [fit.params for fit in fits] == ["p=0.5"]


class TestResults:
    """Test cases for CSV and JSON output."""

    def test_csv_round_trip(self, tmp_path):
        rows = run_experiment(_config())
        path = write_results(rows, [], tmp_path / "out" / "rows.csv")
        loaded, fits = read_results(path)
        assert loaded == rows
        assert fits == []
        assert path.read_text(encoding="utf-8").splitlines()[0] == (
            "algorithm,distribution,params,n,trial,seed,comparisons,rounds,wall_seconds"
        )

    def test_header_only_when_empty(self, tmp_path):
        path = write_results([], [], tmp_path / "empty.csv")
        assert len(path.read_text(encoding="utf-8").splitlines()) == 1

    def test_json_matches_csv(self, tmp_path):
        rows = run_experiment(_config())
        fits = fit_groups(rows)
        csv_rows, _ = read_results(write_results(rows, fits, tmp_path / "r.csv"))
        json_rows, json_fits = read_results(write_results(rows, fits, tmp_path / "r.json"))
        assert csv_rows == json_rows == rows
        assert len(json_fits) == 1
        assert json_fits[0]['algorithm'] == "round-robin"

    def test_byte_identical_reruns(self, tmp_path):
        first = write_results(run_experiment(_config()), [], tmp_path / "a.csv")
        second = write_results(run_experiment(_config()), [], tmp_path / "b.csv")
        assert first.read_bytes() == second.read_bytes()

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ConfigError):
            write_results([], [], tmp_path / "rows.xml")

    def test_write_failure(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        with pytest.raises(ResultsWriteError):
            write_results([], [], blocker / "rows.csv")


LINEAR_GRID = tuple(range(1000, 20001, 1000))

# Measured worst case is 4.4% (Poisson, lambda = 25); small n carries most of it
LINEAR_SPREAD = 0.10


@pytest.mark.slow
class TestRoundRobinScaling:
    """Test cases for the round-robin linear fits over 10^3..2*10^4."""

    @pytest.mark.parametrize("distribution", [
        Uniform(10), Uniform(25), Uniform(100),
        Geometric(1 / 2), Geometric(1 / 10), Geometric(1 / 50),
        Poisson(1), Poisson(5), Poisson(25),
    ], ids=lambda dist: dist.params_label())
    def test_linear_fit(self, distribution):
        rows = run_experiment(_config(distribution=distribution, n_grid=LINEAR_GRID, trials=2, base_seed=7))
        fit = linear_fit(rows)
        assert fit.slope > 0
        assert fit.r_squared >= 0.99
        assert fit.relative_spread <= LINEAR_SPREAD

    def test_zeta_above_two_is_linear(self):
        """s = 2.5: mean comparisons per element stays within 25% of the grid mean."""
        grid = tuple(range(1000, 20001, 2000))
        rows = run_experiment(_config(distribution=Zeta(2.5), n_grid=grid, trials=2, base_seed=7))
        per_n = [
            sum(row.comparisons for row in rows if row.n == n) / (2 * n)
            for n in grid
        ]
        centre = sum(per_n) / len(per_n)
        assert all(abs(value - centre) <= 0.25 * centre for value in per_n)

    def test_zeta_two_grows_faster_than_linear(self):
        """s = 2 is only measured; comparisons per element rise with n."""
        rows = run_experiment(_config(distribution=Zeta(2), n_grid=(1000, 5000, 20000), trials=2, base_seed=7))
        per_n = {
            n: sum(row.comparisons for row in rows if row.n == n) / (2 * n)
            for n in (1000, 20000)
        }
        assert per_n[20000] > per_n[1000]
