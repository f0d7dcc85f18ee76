"""
Comparison Model Module
Responsibility:
- Equivalence oracles (ground truth, recording wrapper)
- ER / CR round legality
- Round and comparison accounting in Valiant's model
"""

from .oracle import (
    ComparisonResult, GroundTruth, Oracle, TruthOracle, RecordingOracle, make_truth_oracle
)
from .rounds import (
    ReadMode, RoundSchedule, RunMetrics, canonical_pair,
    validate_er_round, validate_cr_round, execute_round
)

__all__ = [
    'ComparisonResult',
    'GroundTruth',
    'Oracle',
    'TruthOracle',
    'RecordingOracle',
    'make_truth_oracle',
    'ReadMode',
    'RoundSchedule',
    'RunMetrics',
    'canonical_pair',
    'validate_er_round',
    'validate_cr_round',
    'execute_round',
]
