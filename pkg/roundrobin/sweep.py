"""
Round-robin equivalence-class sorting

Sweep r = 1, 2, ..., n-1: every element x, in id order, compares itself
with element (x + r) mod n unless the knowledge graph already settles
that pair. The run stops as soon as the knowledge graph is a clique.

By the time sweep r starts, every pair at cyclic distance < r is
settled, so same-class elements that close are already one group. Once
x has a Different answer against class B as initiator, every later
target of x in B is within a smaller distance of that first one and is
therefore already known distinct; the same holds for x as a target.
Each element thus takes part in at most two tests against any other
class, which bounds the tests between classes i and j by
2 * min(Y_i, Y_j).
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from comparison.oracle import GroundTruth, Oracle
from knowledge.partition import PartitionState, Relation
from utils.errors import ConfigError


@dataclass
class RoundRobinState:
    """Knowledge plus the shared sweep offset (every element's cursor)"""
    knowledge: PartitionState
    offset: int = 0


@dataclass
class RoundRobinOutcome:
    """Final knowledge, total tests R and, given truth, tests per class pair"""
    knowledge: PartitionState
    comparisons: int
    sweeps: int
    pair_counts: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def groups(self) -> List[List[int]]:
        return self.knowledge.groups()

    @property
    def same_tests(self) -> int:
        """Every Same answer merged two groups, so there are n - k of them"""
        return self.knowledge.n - self.knowledge.group_count

    @property
    def different_tests(self) -> int:
        return self.comparisons - self.same_tests


def round_robin_sort(
        oracle: Oracle,
        n: Optional[int] = None,
        truth: Optional[GroundTruth] = None
) -> RoundRobinOutcome:
    """
    Sort with the round-robin regimen and count every test

    Args:
        oracle: Oracle answering the tests
        n: Element count (defaults to oracle.n)
        truth: When given, tests are tallied per (label, label) pair

    Returns:
        RoundRobinOutcome with the exact comparison count R
    """
    n = oracle.n if n is None else n
    if n < 1:
        raise ConfigError(f"Need at least one element, got n={n}")

    state = RoundRobinState(PartitionState(n))
    knowledge = state.knowledge
    labels = truth.labels if truth is not None else None
    pair_counts: Dict[Tuple[int, int], int] = {}
    comparisons = 0

    # Elements whose group already knows its relation to every other group
    # can never start a useful test again; drop them from later sweeps.
    active = list(range(n))

    while not knowledge.is_complete() and state.offset < n - 1:
        state.offset += 1
        r = state.offset
        for x in active:
            y = (x + r) % n
            if knowledge.relation_known(x, y) is not Relation.UNKNOWN:
                continue
            result = oracle.compare(x, y)
            knowledge.apply_result(x, y, result)
            comparisons += 1
            if labels is not None and labels[x] != labels[y]:
                key = (min(labels[x], labels[y]), max(labels[x], labels[y]))
                pair_counts[key] = pair_counts.get(key, 0) + 1
            if knowledge.is_complete():
                break
        active = [x for x in active if not knowledge.is_resolved(x)]

    return RoundRobinOutcome(knowledge, comparisons, state.offset, pair_counts)


def cross_class_budget_violations(outcome: RoundRobinOutcome, truth: GroundTruth) -> List[Tuple[int, int]]:
    """Class pairs whose test count exceeds 2 * min(Y_i, Y_j)"""
    sizes = truth.class_sizes()
    return [
        pair for pair, count in sorted(outcome.pair_counts.items())
        if count > 2 * min(sizes[pair[0]], sizes[pair[1]])
    ]
