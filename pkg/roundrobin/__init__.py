"""
Round-Robin Module
Responsibility:
- Sequential round-robin sorting with an exact comparison count
- Per class-pair test ledger for the 2 * min(Y_i, Y_j) budget
"""

from .sweep import (
    RoundRobinOutcome,
    RoundRobinState,
    cross_class_budget_violations,
    round_robin_sort,
)

__all__ = [
    'RoundRobinOutcome',
    'RoundRobinState',
    'cross_class_budget_violations',
    'round_robin_sort',
]
