"""Shared instance factories"""

import numpy as np
import pytest

from comparison.oracle import GroundTruth


@pytest.fixture
def random_truth():
    """Labels drawn uniformly from k classes"""
    def build(n: int, k: int, seed: int) -> GroundTruth:
        rng = np.random.default_rng(seed)
        return GroundTruth(rng.integers(0, k, size=n))
    return build


@pytest.fixture
def sized_truth():
    """Labels with the given class sizes, shuffled"""
    def build(sizes, seed: int = 0) -> GroundTruth:
        labels = np.repeat(np.arange(len(sizes)), sizes)
        np.random.default_rng(seed).shuffle(labels)
        return GroundTruth(labels)
    return build


@pytest.fixture
def mixed_truths():
    """Seeded instances with n <= max_n, k <= max_k and varied class profiles

    Profiles rotate between equal weights, halving weights and one
    dominant class with k - 1 small ones.
    """
    def build(count: int, seed: int, max_n: int = 2000, max_k: int = 20):
        rng = np.random.default_rng(seed)
        truths = []
        for index in range(count):
            n = int(rng.integers(1, max_n + 1))
            k = int(rng.integers(1, min(max_k, n) + 1))
            profile = index % 3
            if profile == 0:
                weights = np.ones(k)
            elif profile == 1:
                weights = 0.5 ** np.arange(k)
            else:
                weights = np.concatenate([[float(k)], np.full(k - 1, 0.1)])
            truths.append(GroundTruth(rng.choice(k, size=n, p=weights / weights.sum())))
        return truths
    return build
