"""
Class-distribution samplers

Every distribution is re-indexed most-likely-first: rank 0 is the most
probable class, rank 1 the next, and so on. Ranks are then truncated at
n, so all the mass at or beyond n piles up on n.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Dict, Mapping, Tuple, Union

import numpy as np
from scipy import special, stats

from utils.errors import ConfigError


ParamValue = Union[int, float, Fraction]


class ClassDistribution(ABC):
    """A distribution over equivalence classes, indexed by rank"""

    name: ClassVar[str] = ""

    @abstractmethod
    def raw_ranks(self, rng: np.random.Generator, size: int, n: int) -> np.ndarray:
        """Untruncated 0-based ranks (values above n may appear)"""

    @abstractmethod
    def params(self) -> Dict[str, ParamValue]:
        """Parameters keyed by their CLI names"""

    @abstractmethod
    def rank_pmf(self, n: int) -> np.ndarray:
        """P(rank = r) under D_N(n) for r in [0, n]; entry n holds the pooled tail"""

    def sample(self, rng: np.random.Generator, size: int, cap: int) -> np.ndarray:
        """size ranks, each clamped to cap"""
        return np.minimum(self.raw_ranks(rng, size, cap), cap).astype(np.int64)

    def params_label(self) -> str:
        """Stable text form, e.g. 'p=0.5' or 'k=10'"""
        return ";".join(f"{key}={value:g}" for key, value in sorted(self.params().items()))


@dataclass(frozen=True)
class Uniform(ClassDistribution):
    k: int
    name: ClassVar[str] = "uniform"

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ConfigError(f"uniform needs an integer k >= 1, got {self.k}")

    def raw_ranks(self, rng, size, n):
        return rng.integers(0, int(self.k), size=size)

    def params(self):
        return {'k': int(self.k)}

    def rank_pmf(self, n):
        k = int(self.k)
        return np.bincount(np.minimum(np.arange(k), n), minlength=n + 1) / k


@dataclass(frozen=True)
class Geometric(ClassDistribution):
    """Rank i with probability p^i (1 - p): heads before the first tail"""
    p: float
    name: ClassVar[str] = "geometric"

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ConfigError(f"geometric needs 0 < p < 1, got {self.p}")

    def raw_ranks(self, rng, size, n):
        # numpy counts trials up to and including the first success
        return rng.geometric(1.0 - self.p, size=size) - 1

    def params(self):
        return {'p': float(self.p)}

    def rank_pmf(self, n):
        p = self.p
        pmf = (1 - p) * p ** np.arange(n + 1, dtype=float)
        pmf[n] = p ** n
        return pmf


@dataclass(frozen=True)
class Poisson(ClassDistribution):
    """Class = number of events; ranks follow descending pmf"""
    lam: float
    name: ClassVar[str] = "poisson"

    def __post_init__(self):
        if not self.lam > 0:
            raise ConfigError(f"poisson needs lambda > 0, got {self.lam}")

    def table_size(self, at_least: int = 0) -> int:
        return max(int(at_least), int(3 * self.lam) + 20) + 1

    def rank_table(self, size: int) -> np.ndarray:
        """rank_table[o] = rank of outcome o, for o in [0, size)"""
        return poisson_rank_table(self.lam, size)

    def raw_ranks(self, rng, size, n):
        outcomes = rng.poisson(self.lam, size=size)
        top = int(outcomes.max()) if size else 0
        table = self.rank_table(self.table_size(top))
        return table[outcomes]

    def params(self):
        return {'lambda': float(self.lam)}

    def rank_pmf(self, n):
        size = self.table_size(int(self.lam + 12 * math.sqrt(self.lam)) + 20)
        ranks = np.minimum(self.rank_table(size), n)
        pmf = np.bincount(ranks, weights=stats.poisson.pmf(np.arange(size), self.lam), minlength=n + 1)
        # outcomes past the table rank below everything in it
        pmf[min(size, n)] += stats.poisson.sf(size - 1, self.lam)
        return pmf


@dataclass(frozen=True)
class Zeta(ClassDistribution):
    """Rank i - 1 with probability i^-s / zeta(s), i >= 1"""
    s: float
    name: ClassVar[str] = "zeta"

    def __post_init__(self):
        if not self.s > 1:
            raise ConfigError(f"zeta needs s > 1, got {self.s}")

    def cdf_table(self, n: int) -> np.ndarray:
        """P(rank <= r) for r in [0, n), then 1.0 for the pooled tail"""
        total = special.zeta(self.s)
        tails = special.zeta(self.s, np.arange(2, n + 2, dtype=float))
        return np.append(1.0 - tails / total, 1.0)

    def raw_ranks(self, rng, size, n):
        cdf = self.cdf_table(n)
        return np.searchsorted(cdf, rng.random(size), side='right')

    def params(self):
        return {'s': float(self.s)}

    def rank_pmf(self, n):
        total = special.zeta(self.s)
        i = np.arange(1, n + 1, dtype=float)
        return np.append(i ** -self.s / total, special.zeta(self.s, n + 1) / total)


def poisson_rank_table(lam: float, size: int) -> np.ndarray:
    """
    Rank of each outcome 0..size-1 under descending Poisson pmf

    Log-pmf values are rounded to 12 decimals so that exact ties (the
    two modes when lambda is an integer) go to the smaller outcome.
    """
    outcomes = np.arange(size)
    logpmf = np.round(stats.poisson.logpmf(outcomes, lam), 12)
    order = np.lexsort((outcomes, -logpmf))
    ranks = np.empty(size, dtype=np.int64)
    ranks[order] = outcomes
    return ranks


@dataclass(frozen=True)
class RankSample:
    """n ranks drawn from D_N(n); the ranks double as class labels"""
    ranks: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.ranks)

    def class_sizes(self) -> Dict[int, int]:
        values, counts = np.unique(np.asarray(self.ranks), return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def sample_ranks(dist: ClassDistribution, n: int, rng_seed: int) -> RankSample:
    """
    Draw n independent ranks, truncated at n

    Args:
        dist: Class distribution
        n: Number of elements (>= 1)
        rng_seed: Seed; equal seeds give equal samples

    Returns:
        RankSample
    """
    if n < 1:
        raise ConfigError(f"Need at least one element, got n={n}")
    rng = np.random.default_rng(rng_seed)
    return RankSample(tuple(int(r) for r in dist.sample(rng, n, n)))


_DISTRIBUTIONS = {
    'uniform': (Uniform, 'k'),
    'geometric': (Geometric, 'p'),
    'poisson': (Poisson, 'lambda'),
    'zeta': (Zeta, 's'),
}


def parse_distribution(name: str, params: Mapping[str, ParamValue]) -> ClassDistribution:
    """
    Build a distribution from its CLI name and key=value parameters

    Examples:
        >>> parse_distribution('geometric', {'p': Fraction(1, 10)})
        Geometric(p=0.1)
    """
    key = (name or "").strip().lower()
    if key not in _DISTRIBUTIONS:
        raise ConfigError(
            f"Unknown distribution {name!r}; choose from {', '.join(sorted(_DISTRIBUTIONS))}"
        )
    cls, param = _DISTRIBUTIONS[key]
    unexpected = sorted(set(params) - {param})
    if unexpected:
        raise ConfigError(f"{key} takes only {param}=..., got {', '.join(unexpected)}")
    if param not in params:
        raise ConfigError(f"{key} needs --param {param}=...")

    value = params[param]
    if cls is Uniform:
        if Fraction(value).denominator != 1:
            raise ConfigError(f"uniform needs an integer k, got {value}")
        return Uniform(int(value))
    return cls(float(value))
