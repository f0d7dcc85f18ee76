"""
Equivalence oracles

An oracle answers one question: are two elements in the same class?
Algorithms only ever see ComparisonResult values, never labels, so the
same algorithm runs unchanged against ground truth or an adversary.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

from utils.errors import ConfigError


class ComparisonResult(Enum):
    """Outcome of a single equivalence test"""
    SAME = "same"
    DIFFERENT = "different"


@dataclass(frozen=True)
class GroundTruth:
    """Hidden class labels, one per element id in [0, n)"""
    labels: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ConfigError("GroundTruth needs at least one element")
        # Normalise any sequence (list, numpy array) to a tuple of ints
        object.__setattr__(self, 'labels', tuple(int(label) for label in self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        """Number of distinct classes"""
        return len(set(self.labels))

    @property
    def ell(self) -> int:
        """Size of the smallest class"""
        return min(self.class_sizes().values())

    def class_sizes(self) -> dict:
        sizes: dict = {}
        for label in self.labels:
            sizes[label] = sizes.get(label, 0) + 1
        return sizes

    def classes(self) -> List[List[int]]:
        """Classes as sorted member lists, ordered by smallest member"""
        members: dict = {}
        for element, label in enumerate(self.labels):
            members.setdefault(label, []).append(element)
        return sorted(members.values(), key=lambda group: group[0])


class Oracle(ABC):
    """Answers equivalence tests between element ids"""

    @property
    @abstractmethod
    def n(self) -> int:
        """Number of elements the oracle knows about"""

    @abstractmethod
    def compare(self, x: int, y: int) -> ComparisonResult:
        """Test whether x and y are in the same class"""


class TruthOracle(Oracle):
    """Stateless oracle backed by ground-truth labels"""

    def __init__(self, truth: GroundTruth):
        self.truth = truth

    @property
    def n(self) -> int:
        return self.truth.n

    def compare(self, x: int, y: int) -> ComparisonResult:
        labels = self.truth.labels
        if labels[x] == labels[y]:
            return ComparisonResult.SAME
        return ComparisonResult.DIFFERENT


@dataclass
class RecordingOracle(Oracle):
    """Wraps another oracle and logs every query in order"""
    inner: Oracle
    log: List[Tuple[int, int, ComparisonResult]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.inner.n

    def compare(self, x: int, y: int) -> ComparisonResult:
        result = self.inner.compare(x, y)
        self.log.append((x, y, result))
        return result


def make_truth_oracle(truth: GroundTruth) -> TruthOracle:
    """
    Build a stateless oracle that answers from ground truth

    Args:
        truth: Class labels (must be non-empty)

    Returns:
        TruthOracle answering SAME iff labels are equal
    """
    if truth is None or truth.n == 0:
        raise ConfigError("Cannot build an oracle over an empty ground truth")
    return TruthOracle(truth)
