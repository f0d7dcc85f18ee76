"""
Unions of random Hamiltonian cycles and the choice of their count d

H_d is the union of d directed Hamiltonian cycles, each read off a
uniformly random permutation. For a smallest-class fraction lambda the
failure probability of the constant-round sort decays like
exp(n * [(1 + lambda) ln 2 + d * t]), where t < 0 depends on lambda
(with gamma = 1/4). d is the smallest count making that exponent
negative under the bound t <= -lambda^2 / 8.
"""

import math
from dataclasses import dataclass
from typing import List, Set, Tuple

import numpy as np

from utils.errors import ConfigError


GAMMA = 0.25
LAMBDA_MAX = 0.4


def _check_lambda(lambda_frac: float):
    if not (0.0 < lambda_frac <= LAMBDA_MAX):
        raise ConfigError(
            f"lambda must be in (0, {LAMBDA_MAX}] (at least three classes), got {lambda_frac}"
        )


def log_one_minus_bounds(x: float) -> Tuple[float, float]:
    """Cubic Taylor bounds (lower, upper) on ln(1 - x), valid for 0 <= x <= 0.4"""
    if not (0.0 <= x <= LAMBDA_MAX):
        raise ConfigError(f"bounds hold only for x in [0, 0.4], got {x}")
    lower = -x - x ** 2 / 2 - x ** 3 / 2
    upper = -x - x ** 2 / 2 - x ** 3 / 4
    return lower, upper


def exact_t(lambda_frac: float, gamma: float = GAMMA) -> float:
    """alpha ln alpha + beta ln beta - (1 - lambda) ln(1 - lambda)"""
    alpha = 1 - (1 - gamma) / 2 * lambda_frac
    beta = 1 - (1 + gamma) / 2 * lambda_frac
    return (alpha * math.log(alpha) + beta * math.log(beta)
            - (1 - lambda_frac) * math.log(1 - lambda_frac))


def quartic_t_bound(lambda_frac: float) -> float:
    """Upper bound on t for gamma = 1/4 obtained from the Taylor bounds"""
    lam = lambda_frac
    return -3743 / 8192 * lam ** 4 + 19 / 256 * lam ** 3 - 15 / 64 * lam ** 2


def failure_exponent(lambda_frac: float, d: int, t: float = None) -> float:
    """(1 + lambda) ln 2 + d * t; t defaults to the closed-form bound -lambda^2 / 8"""
    if t is None:
        t = -lambda_frac ** 2 / 8
    return (1 + lambda_frac) * math.log(2) + d * t


def compute_d(lambda_frac: float) -> int:
    """
    Smallest cycle count d with (1 + lambda) ln 2 - d * lambda^2 / 8 < 0

    Examples:
        >>> compute_d(0.4)
        49
        >>> compute_d(0.2)
        167
    """
    _check_lambda(lambda_frac)
    return math.floor(8 * (1 + lambda_frac) * math.log(2) / lambda_frac ** 2) + 1


@dataclass
class CycleUnionGraph:
    """Union of d directed Hamiltonian cycles on vertices [0, n)"""
    n: int
    permutations: List[np.ndarray]

    @property
    def d(self) -> int:
        return len(self.permutations)

    def cycle_arcs(self, index: int) -> List[Tuple[int, int]]:
        """Arcs of one cycle in position order: pi(t) -> pi(t + 1 mod n)"""
        perm = self.permutations[index]
        n = self.n
        return [(int(perm[t]), int(perm[(t + 1) % n])) for t in range(n)]

    def arcs(self) -> Set[Tuple[int, int]]:
        """All distinct arcs (duplicates across cycles collapse)"""
        collected: Set[Tuple[int, int]] = set()
        for index in range(self.d):
            collected.update(self.cycle_arcs(index))
        return collected

    def out_degree(self, vertex: int) -> int:
        return sum(1 for u, _ in self.arcs() if u == vertex)


def sample_cycle_union(n: int, d: int, rng_seed: int) -> CycleUnionGraph:
    """
    Draw H_d from d independent uniform permutations

    Args:
        n: Vertex count (>= 3)
        d: Number of cycles (>= 1)
        rng_seed: Seed; equal seeds give identical graphs

    Returns:
        CycleUnionGraph
    """
    if n < 3:
        raise ConfigError(f"Hamiltonian cycles need n >= 3, got {n}")
    if d < 1:
        raise ConfigError(f"Need at least one cycle, got d={d}")
    rng = np.random.default_rng(rng_seed)
    return CycleUnionGraph(n, [rng.permutation(n) for _ in range(d)])
