"""
Adversary Module
Responsibility:
- Answer equivalence tests adaptively to force many comparisons
- Certify whether an algorithm's declared answer could be refuted
"""

from .coloring import (
    AdversaryAnswer,
    AdversaryMode,
    AdversaryOracle,
    AdversaryState,
    Certificate,
    ElementMark,
    SCC_COLOR,
    adversary_answer,
    certify_floor,
    is_equitable,
    is_proper,
    marking_tally,
    new_scc_adversary,
    new_uniform_adversary,
)

__all__ = [
    'AdversaryAnswer',
    'AdversaryMode',
    'AdversaryOracle',
    'AdversaryState',
    'Certificate',
    'ElementMark',
    'SCC_COLOR',
    'adversary_answer',
    'certify_floor',
    'is_equitable',
    'is_proper',
    'marking_tally',
    'new_scc_adversary',
    'new_uniform_adversary',
]
