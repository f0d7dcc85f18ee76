"""
Least-squares fits of comparisons against n
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from bench.runner import ResultRow
from utils.errors import ConfigError


@dataclass
class FitReport:
    """comparisons ~ slope * n + intercept for one (algorithm, distribution, params) group"""
    algorithm: str
    distribution: str
    params: str
    slope: float
    intercept: float
    r_squared: float
    relative_spread: float
    points: int


def linear_fit(rows: Sequence[ResultRow]) -> FitReport:
    """
    Ordinary least squares over every row of one group

    relative_spread is the largest |y - fit(n)| / fit(n) over all rows.

    Raises:
        ConfigError: If fewer than three distinct n are present
    """
    if len({row.n for row in rows}) < 3:
        raise ConfigError("A linear fit needs at least three distinct n values")

    x = np.array([row.n for row in rows], dtype=float)
    y = np.array([row.comparisons for row in rows], dtype=float)
    design = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)

    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r_squared = 1.0
    else:
        r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))

    positive = fitted > 0
    if positive.any():
        spread = float(np.max(np.abs(y[positive] - fitted[positive]) / fitted[positive]))
    else:
        spread = 0.0

    first = rows[0]
    return FitReport(
        algorithm=first.algorithm,
        distribution=first.distribution,
        params=first.params,
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        relative_spread=spread,
        points=len(rows),
    )


def fit_groups(rows: Sequence[ResultRow]) -> List[FitReport]:
    """One fit per (algorithm, distribution, params) with >= 3 distinct n; others are skipped"""
    groups: Dict[Tuple[str, str, str], List[ResultRow]] = {}
    for row in rows:
        groups.setdefault((row.algorithm, row.distribution, row.params), []).append(row)
    return [
        linear_fit(members)
        for _, members in sorted(groups.items())
        if len({row.n for row in members}) >= 3
    ]
