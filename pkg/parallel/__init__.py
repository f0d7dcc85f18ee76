"""
Parallel Algorithms Module
Responsibility:
- Merge fully-resolved answers (Latin-square ER, batched CR)
- cr_sort: O(k + log log n) CR rounds
- er_sort: O(k log n) ER rounds
- er_constant_sort / er_constant_retry: O(1) ER rounds when every class
  holds at least lambda * n elements
"""

from .answers import Answer, SortOutcome, merge_answers_pair
from .group_sort import cr_sort, er_sort
from .cycles import CycleUnionGraph, compute_d, sample_cycle_union
from .constant_round import ConstantRoundParams, er_constant_sort, er_constant_retry

__all__ = [
    'Answer',
    'SortOutcome',
    'merge_answers_pair',
    'cr_sort',
    'er_sort',
    'CycleUnionGraph',
    'compute_d',
    'sample_cycle_union',
    'ConstantRoundParams',
    'er_constant_sort',
    'er_constant_retry',
]
