"""
Rounds and accounting in Valiant's parallel comparison model

Only comparison steps are counted. Bookkeeping between rounds is free,
and a round with no comparisons is not a step at all.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from comparison.oracle import ComparisonResult, Oracle
from utils.errors import IllegalRoundError


Pair = Tuple[int, int]


class ReadMode(Enum):
    """Exclusive-read or concurrent-read comparison rounds"""
    ER = "er"
    CR = "cr"


def canonical_pair(x: int, y: int) -> Pair:
    """Order a pair smaller id first"""
    if x == y:
        raise IllegalRoundError(f"Element {x} cannot be compared with itself")
    return (x, y) if x < y else (y, x)


@dataclass(frozen=True)
class RoundSchedule:
    """Pairs compared together in one synchronous round

    Pairs are canonical (smaller id first) and unique; order is kept as
    given so execution stays reproducible.
    """
    pairs: Tuple[Pair, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[Pair]) -> 'RoundSchedule':
        seen = set()
        ordered = []
        for x, y in pairs:
            pair = canonical_pair(int(x), int(y))
            if pair not in seen:
                seen.add(pair)
                ordered.append(pair)
        return cls(tuple(ordered))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass
class RunMetrics:
    """Cumulative cost of one run: rounds and comparisons"""
    rounds: int = 0
    total_comparisons: int = 0
    per_round_sizes: List[int] = field(default_factory=list)
    # Set to a list to keep every executed schedule (legality audits)
    schedules: Optional[List[RoundSchedule]] = None

    def record(self, size: int):
        """Account for one executed round of `size` comparisons"""
        if size <= 0:
            return
        self.per_round_sizes.append(size)
        self.rounds += 1
        self.total_comparisons += size

    def is_consistent(self) -> bool:
        return (self.total_comparisons == sum(self.per_round_sizes)
                and self.rounds == len(self.per_round_sizes))


def validate_er_round(schedule: RoundSchedule) -> bool:
    """True iff no element appears in more than one pair"""
    used = set()
    for x, y in schedule.pairs:
        if x in used or y in used:
            return False
        used.add(x)
        used.add(y)
    return True


def validate_cr_round(schedule: RoundSchedule, n: int) -> bool:
    """True iff the round fits in n processors (elements may repeat)"""
    return len(schedule.pairs) <= n


def _er_violation(schedule: RoundSchedule) -> Optional[int]:
    used = set()
    for x, y in schedule.pairs:
        for element in (x, y):
            if element in used:
                return element
            used.add(element)
    return None


def execute_round(
        oracle: Oracle,
        schedule: RoundSchedule,
        metrics: RunMetrics,
        mode: Optional[ReadMode] = None,
        processors: Optional[int] = None
) -> List[ComparisonResult]:
    """
    Run one synchronous round against an oracle

    Args:
        oracle: Oracle answering the tests
        schedule: Pairs to compare
        metrics: Accounting updated in place
        mode: Legality rule to enforce (None skips the check)
        processors: CR processor budget (defaults to oracle.n)

    Returns:
        One result per pair, in schedule order

    Raises:
        IllegalRoundError: If the round breaks the mode's rule
    """
    if mode is ReadMode.ER:
        offender = _er_violation(schedule)
        if offender is not None:
            raise IllegalRoundError(
                f"ER round uses element {offender} in more than one comparison"
            )
    elif mode is ReadMode.CR:
        budget = oracle.n if processors is None else processors
        if not validate_cr_round(schedule, budget):
            raise IllegalRoundError(
                f"CR round has {len(schedule)} comparisons for {budget} processors"
            )

    if len(schedule) == 0:
        return []

    results = [oracle.compare(x, y) for x, y in schedule.pairs]
    metrics.record(len(results))
    if metrics.schedules is not None:
        metrics.schedules.append(schedule)
    return results
