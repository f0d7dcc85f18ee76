"""
Dominance bound and expectations for round-robin sorting

For every sampled instance the round-robin comparison count R is at
most twice the sum of the element ranks. The helpers here compute that
bound, the exact mean rank under D_N(n), and high-probability ceilings
on the rank sum.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np
from scipy import special

from comparison.oracle import GroundTruth
from distributions.samplers import (
    ClassDistribution, Geometric, Poisson, RankSample, Uniform
)
from utils.errors import ConfigError


Ranks = Union[RankSample, Sequence[int]]


def _values(ranks: Ranks) -> Sequence[int]:
    return ranks.ranks if isinstance(ranks, RankSample) else ranks


def dominance_bound(ranks: Ranks) -> int:
    """
    2 * sum of ranks

    Examples:
        >>> dominance_bound([1, 2, 3])
        12
    """
    return 2 * int(sum(int(r) for r in _values(ranks)))


def realize_labels(ranks: Ranks) -> GroundTruth:
    """Ground truth whose labels are the ranks themselves"""
    return GroundTruth(tuple(int(r) for r in _values(ranks)))


def zeta_mean(s: float) -> float:
    """Mean of the (1-based) zeta distribution: zeta(s-1) / zeta(s), s > 2"""
    if not s > 2:
        raise ConfigError(f"zeta mean is finite only for s > 2, got {s}")
    return float(special.zeta(s - 1) / special.zeta(s))


def mean_rank(dist: ClassDistribution, n: int) -> float:
    """Exact expectation of one rank drawn from D_N(n)"""
    if n < 1:
        raise ConfigError(f"Need n >= 1, got n={n}")
    return float(np.dot(np.arange(n + 1), dist.rank_pmf(n)))


def expected_class_count(dist: ClassDistribution, n: int) -> float:
    """Expected number of distinct ranks among n draws from D_N(n)"""
    if n < 1:
        raise ConfigError(f"Need n >= 1, got n={n}")
    pmf = np.clip(dist.rank_pmf(n), 0.0, 1.0)
    return float(np.sum(1.0 - (1.0 - pmf) ** n))


def high_probability_ceiling(dist: ClassDistribution, n: int) -> Optional[float]:
    """
    Ceiling on the sum of n ranks that holds with exponentially high probability

    Uniform is deterministic. Geometric and Poisson follow Chernoff
    bounds (failure at most e^{-n p'} and e^{-n}); the Poisson figure
    adds e*lambda + 1 per element because reordering by pmf can move an
    outcome below the mode that far up. Zeta has no such ceiling.
    """
    if isinstance(dist, Uniform):
        return float((dist.k - 1) * n)
    if isinstance(dist, Geometric):
        return 2 * n / (1 - dist.p)
    if isinstance(dist, Poisson):
        lam = dist.lam
        return (lam * (math.e - 1) + 1) * n + (math.e * lam + 1) * n
    return None
