"""
Distributions Module
Responsibility:
- Sample class ranks from uniform, geometric, Poisson and zeta laws
- Dominance bound 2 * sum(ranks) on round-robin comparisons
- Mean ranks and high-probability ceilings for sizing experiments
"""

from .samplers import (
    ClassDistribution,
    Geometric,
    Poisson,
    RankSample,
    Uniform,
    Zeta,
    parse_distribution,
    sample_ranks,
)
from .dominance import (
    dominance_bound,
    high_probability_ceiling,
    expected_class_count,
    mean_rank,
    realize_labels,
    zeta_mean,
)

__all__ = [
    'ClassDistribution',
    'Geometric',
    'Poisson',
    'RankSample',
    'Uniform',
    'Zeta',
    'parse_distribution',
    'sample_ranks',
    'dominance_bound',
    'high_probability_ceiling',
    'expected_class_count',
    'mean_rank',
    'realize_labels',
    'zeta_mean',
]
