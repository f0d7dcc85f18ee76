"""
Answers and the merge tasks that combine them

An answer is a set of elements whose classes are fully resolved among
themselves. Merging answers only needs one test per pair of classes,
each class represented by its smallest member.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from comparison.oracle import Oracle
from comparison.rounds import (
    Pair, ReadMode, RoundSchedule, RunMetrics, canonical_pair, execute_round
)
from knowledge.partition import PartitionState, Relation
from utils.errors import ConfigError


@dataclass
class Answer:
    """Elements whose internal class structure is known

    classes holds sorted member lists; the first member of each list is
    the representative that performs all of that class's comparisons.
    """
    elements: List[int]
    classes: List[List[int]]

    @classmethod
    def singleton(cls, element: int) -> 'Answer':
        return cls([element], [[element]])

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> List[int]:
        return [members[0] for members in self.classes]


@dataclass
class SortOutcome:
    """Final knowledge and cost of one sorting run"""
    knowledge: PartitionState
    metrics: RunMetrics
    details: Dict[str, object] = field(default_factory=dict)

    def groups(self) -> List[List[int]]:
        return self.knowledge.groups()


def combine_answers(answers: Sequence[Answer], knowledge: PartitionState) -> Answer:
    """Fold several answers into one using what the knowledge graph now says"""
    by_root: Dict[int, List[int]] = {}
    for answer in answers:
        for members in answer.classes:
            by_root.setdefault(knowledge.find(members[0]), []).extend(members)
    classes = sorted((sorted(members) for members in by_root.values()), key=lambda m: m[0])
    elements = sorted(e for answer in answers for e in answer.elements)
    return Answer(elements, classes)


def _check_disjoint(answers: Sequence[Answer]):
    seen = set()
    for answer in answers:
        overlap = seen.intersection(answer.elements)
        if overlap:
            raise ConfigError(f"Answers overlap on elements {sorted(overlap)[:5]}")
        seen.update(answer.elements)


class MergeTask:
    """Produces the rounds that merge a group of answers

    Subclasses yield one list of pairs per call to next_pairs() and
    return None once every class pair has been scheduled.
    """

    def __init__(self, answers: Sequence[Answer], knowledge: PartitionState, prune: bool = True):
        _check_disjoint(answers)
        self.answers = list(answers)
        self.knowledge = knowledge
        self.prune = prune

    def _wanted(self, x: int, y: int) -> bool:
        return not self.prune or self.knowledge.relation_known(x, y) is Relation.UNKNOWN

    def next_pairs(self) -> Optional[List[Pair]]:
        raise NotImplementedError

    def result(self) -> Answer:
        return combine_answers(self.answers, self.knowledge)


class LatinSquareMerge(MergeTask):
    """ER merge of two answers

    Round r pairs class i of the smaller answer with class (i + r) mod k
    of the larger one, so every representative appears at most once per
    round and max(k_a, k_b) rounds cover all k_a * k_b class pairs.
    """

    def __init__(self, a: Answer, b: Answer, knowledge: PartitionState, prune: bool = True):
        super().__init__([a, b], knowledge, prune)
        small, large = (a, b) if a.k <= b.k else (b, a)
        self.small_reps = small.representatives
        self.large_reps = large.representatives
        self.round_index = 0

    @property
    def total_rounds(self) -> int:
        return len(self.large_reps)

    def next_pairs(self) -> Optional[List[Pair]]:
        if self.round_index >= self.total_rounds:
            return None
        r = self.round_index
        self.round_index += 1
        k_large = len(self.large_reps)
        pairs = []
        for i, x in enumerate(self.small_reps):
            y = self.large_reps[(i + r) % k_large]
            if self._wanted(x, y):
                pairs.append(canonical_pair(x, y))
        return pairs


class BatchedMerge(MergeTask):
    """CR merge of c answers within a processor budget

    All cross-answer class pairs are tested, at most `budget` per round.
    With pruning, pairs already settled by earlier rounds are dropped
    before they take a processor.
    """

    def __init__(
            self,
            answers: Sequence[Answer],
            knowledge: PartitionState,
            budget: int,
            prune: bool = True
    ):
        super().__init__(answers, knowledge, prune)
        if budget < 1:
            raise ConfigError(f"Merge budget must be positive, got {budget}")
        self.budget = budget
        self.candidates: List[Pair] = []
        reps = [answer.representatives for answer in self.answers]
        for p in range(len(reps)):
            for q in range(p + 1, len(reps)):
                for x in reps[p]:
                    for y in reps[q]:
                        self.candidates.append(canonical_pair(x, y))
        self.cursor = 0

    def next_pairs(self) -> Optional[List[Pair]]:
        if self.cursor >= len(self.candidates):
            return None
        pairs = []
        while self.cursor < len(self.candidates) and len(pairs) < self.budget:
            x, y = self.candidates[self.cursor]
            self.cursor += 1
            if self._wanted(x, y):
                pairs.append((x, y))
        return pairs


def run_merge_level(
        tasks: Sequence[MergeTask],
        oracle: Oracle,
        knowledge: PartitionState,
        metrics: RunMetrics,
        mode: ReadMode,
        processors: Optional[int] = None
) -> List[RoundSchedule]:
    """
    Run concurrent merge tasks round by round until all are exhausted

    Returns:
        The schedules executed, in order (empty rounds are not executed)
    """
    executed = []
    active = list(tasks)
    while active:
        pairs: List[Pair] = []
        still_active = []
        for task in active:
            batch = task.next_pairs()
            if batch is None:
                continue
            still_active.append(task)
            pairs.extend(batch)
        active = still_active
        if not pairs:
            continue
        schedule = RoundSchedule.from_pairs(pairs)
        results = execute_round(oracle, schedule, metrics, mode=mode, processors=processors)
        for (x, y), result in zip(schedule.pairs, results):
            knowledge.apply_result(x, y, result)
        executed.append(schedule)
    return executed


def merge_answers_pair(
        a: Answer,
        b: Answer,
        mode: ReadMode,
        oracle: Oracle,
        knowledge: PartitionState,
        metrics: Optional[RunMetrics] = None,
        prune: bool = True,
        processors: Optional[int] = None
):
    """
    Merge two disjoint answers

    Args:
        a, b: Answers over disjoint element sets
        mode: ER uses the Latin-square tournament, CR batches all k_a * k_b
              tests within `processors` (default |a| + |b|)
        oracle: Oracle answering the tests
        knowledge: Shared knowledge graph, updated in place
        metrics: Accounting (a fresh RunMetrics if omitted)
        prune: Drop tests whose answer is already entailed

    Returns:
        (schedules executed, merged answer)

    Raises:
        ConfigError: If the answers share elements
    """
    metrics = metrics if metrics is not None else RunMetrics()
    if mode is ReadMode.ER:
        task: MergeTask = LatinSquareMerge(a, b, knowledge, prune)
    else:
        budget = processors if processors is not None else len(a.elements) + len(b.elements)
        task = BatchedMerge([a, b], knowledge, budget, prune)
    schedules = run_merge_level([task], oracle, knowledge, metrics, mode, processors)
    return schedules, task.result()
