"""
Benchmark Module
Responsibility:
- Run seeded (algorithm x distribution x n x trial) grids
- Fit comparisons against n
- Write CSV / JSON results
"""

from .runner import (
    ALGORITHMS,
    ExperimentConfig,
    ResultRow,
    check_resources,
    predict_comparisons,
    round_floor,
    run_cell,
    run_experiment,
    seed_for,
)
from .fitting import FitReport, fit_groups, linear_fit
from .results import FIELDS, read_results, write_results

__all__ = [
    'ALGORITHMS',
    'ExperimentConfig',
    'ResultRow',
    'check_resources',
    'predict_comparisons',
    'round_floor',
    'run_cell',
    'run_experiment',
    'seed_for',
    'FitReport',
    'fit_groups',
    'linear_fit',
    'FIELDS',
    'read_results',
    'write_results',
]
