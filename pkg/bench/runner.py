"""
Experiment runner

Runs every (n, trial) cell of a grid for one algorithm and one class
distribution (or one adversary) and records the model costs. Each cell
is independent: its seed is derived from (base_seed, n, trial), so the
rows never depend on execution order or worker count.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from adversary import (
    AdversaryOracle, Certificate, certify_floor, new_scc_adversary, new_uniform_adversary
)
from adversary.coloring import AdversaryMode
from comparison.oracle import make_truth_oracle
from distributions import (
    ClassDistribution, expected_class_count, mean_rank, realize_labels, sample_ranks
)
from parallel import cr_sort, er_constant_retry, er_sort
from roundrobin import round_robin_sort
from utils.config import DEFAULT_MAX_COMPARISONS
from utils.errors import ConfigError, ResourceGuardError
from utils.logger import Logger


ALGORITHMS = ("cr", "er", "er-constant", "round-robin")
ADVERSARY_KINDS = ("f", "ell")

# Default cycle count when estimating er-constant cost (d at lambda = 0.4)
_ESTIMATE_D = 49


@dataclass(frozen=True)
class ExperimentConfig:
    """One algorithm over one grid of sizes"""
    algorithm: str
    distribution: Optional[ClassDistribution]
    n_grid: Tuple[int, ...]
    trials: int = 10
    base_seed: int = 0
    prune: bool = True
    override_d: Optional[int] = None
    k_hint: Optional[int] = None
    adversary: Optional[Tuple[str, int]] = None
    timing: bool = False
    workers: int = 1
    max_comparisons: int = DEFAULT_MAX_COMPARISONS

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"Unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if not self.n_grid:
            raise ConfigError("n grid is empty")
        if any(n < 1 for n in self.n_grid):
            raise ConfigError(f"n grid values must be >= 1, got {list(self.n_grid)}")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigError(f"n grid must be strictly increasing, got {list(self.n_grid)}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.adversary is None and self.distribution is None:
            raise ConfigError("Need a class distribution or an adversary")
        if self.adversary is not None:
            kind, value = self.adversary
            if kind not in ADVERSARY_KINDS:
                raise ConfigError(f"Adversary takes f=<int> or ell=<int>, got {kind}=")
            if value < 1:
                raise ConfigError(f"Adversary {kind} must be >= 1, got {value}")

    @property
    def distribution_name(self) -> str:
        return "adversary" if self.adversary is not None else self.distribution.name

    @property
    def params_label(self) -> str:
        if self.adversary is not None:
            return f"{self.adversary[0]}={self.adversary[1]}"
        return self.distribution.params_label()


@dataclass
class ResultRow:
    """One (n, trial) measurement"""
    algorithm: str
    distribution: str
    params: str
    n: int
    trial: int
    seed: int
    comparisons: int
    rounds: int
    wall_seconds: float = 0.0
    # Adversarial runs only; not part of the written schema
    certificate: Optional[str] = field(default=None, compare=False)


def seed_for(base_seed: int, n: int, trial: int) -> int:
    """Stable per-cell seed"""
    return int(np.random.SeedSequence([base_seed, n, trial]).generate_state(1)[0])


def round_floor(total: int, n: int) -> int:
    """Rounds needed to make `total` comparisons with n processors"""
    if n < 1:
        raise ConfigError(f"Need n >= 1, got n={n}")
    return math.ceil(total / n)


def _estimate_run(config: ExperimentConfig, n: int) -> float:
    if config.adversary is not None:
        return n * (n - 1) / 2 + n
    dist = config.distribution
    if config.algorithm == "round-robin":
        return 2 * n * mean_rank(dist, n) + n
    k = min(n, expected_class_count(dist, n))
    merging = 2 * n * k
    if config.algorithm == "er-constant":
        return (config.override_d or _ESTIMATE_D) * n + merging
    return merging


def predict_comparisons(config: ExperimentConfig) -> float:
    """Rough total comparison count for the whole grid"""
    return sum(config.trials * _estimate_run(config, n) for n in config.n_grid)


def check_resources(config: ExperimentConfig):
    """
    Raises:
        ResourceGuardError: If the grid is predicted to exceed the ceiling
    """
    predicted = predict_comparisons(config)
    if predicted > config.max_comparisons:
        raise ResourceGuardError(
            f"Grid is predicted to need about {predicted:.3g} comparisons, above the "
            f"ECS_MAX_COMPARISONS ceiling of {config.max_comparisons:.3g}. "
            f"Shrink --n-grid or --trials, or raise the ceiling."
        )


def _build_adversary(config: ExperimentConfig, n: int):
    kind, value = config.adversary
    if kind == "f":
        return new_uniform_adversary(n, value)
    return new_scc_adversary(n, value)


def _certify(state, outcome) -> Certificate:
    groups = outcome.groups()
    if state.mode is AdversaryMode.UNIFORM:
        return certify_floor(state, groups)
    smallest = min(groups, key=lambda group: (len(group), group[0]))
    return certify_floor(state, smallest[0])


def run_cell(config: ExperimentConfig, n: int, trial: int) -> ResultRow:
    """Run one (n, trial) cell"""
    seed = seed_for(config.base_seed, n, trial)
    state = None
    if config.adversary is not None:
        state = _build_adversary(config, n)
        oracle = AdversaryOracle(state)
    else:
        ranks = sample_ranks(config.distribution, n, seed)
        oracle = make_truth_oracle(realize_labels(ranks))

    started = time.perf_counter()
    if config.algorithm == "round-robin":
        outcome = round_robin_sort(oracle, n=n)
        comparisons, rounds = outcome.comparisons, 0
    else:
        if config.algorithm == "cr":
            outcome = cr_sort(oracle, n=n, k_hint=config.k_hint, prune=config.prune)
        elif config.algorithm == "er":
            outcome = er_sort(oracle, n=n, k_hint=config.k_hint, prune=config.prune)
        else:
            outcome = er_constant_retry(
                oracle, rng_seed=seed, n=n, override_d=config.override_d, prune=config.prune
            )
        comparisons, rounds = outcome.metrics.total_comparisons, outcome.metrics.rounds
    elapsed = time.perf_counter() - started

    return ResultRow(
        algorithm=config.algorithm,
        distribution=config.distribution_name,
        params=config.params_label,
        n=n,
        trial=trial,
        seed=seed,
        comparisons=int(comparisons),
        rounds=int(rounds),
        wall_seconds=round(elapsed, 6) if config.timing else 0.0,
        certificate=_certify(state, outcome).value if state is not None else None,
    )


def run_experiment(config: ExperimentConfig, logger: Optional[Logger] = None) -> List[ResultRow]:
    """
    Run the whole grid

    Args:
        config: Experiment description
        logger: Progress output (silent if omitted)

    Returns:
        Rows ordered by (n, trial), whatever the worker count

    Raises:
        ResourceGuardError: If the grid is predicted to be too expensive
    """
    logger = logger if logger is not None else Logger(quiet=True)
    check_resources(config)
    cells = [(n, t) for n in config.n_grid for t in range(config.trials)]
    logger.info(f"{len(cells)} runs: {config.algorithm} on {config.distribution_name} ({config.params_label})")

    rows: List[ResultRow] = []
    if config.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            futures = {executor.submit(run_cell, config, n, t): (n, t) for n, t in cells}
            for done, future in enumerate(as_completed(futures), 1):
                rows.append(future.result())
                if done % max(1, len(cells) // 10) == 0:
                    logger.progress(done, len(cells))
    else:
        for n, t in cells:
            rows.append(run_cell(config, n, t))
            if t == config.trials - 1:
                logger.progress(len(rows), len(cells), f"runs (n={n} done)")

    rows.sort(key=lambda row: (row.n, row.trial))
    return rows
