"""
Parallel sorting by repeated merging of answers

- cr_sort: two-phase compounding merge, O(k + log log n) CR rounds
- er_sort: pairwise Latin-square merges, O(k log n) ER rounds

Both start from n singleton answers. k may be given as a hint; without
one, the largest class count seen in any current answer is used.
"""

from typing import List, Optional

from comparison.oracle import Oracle
from comparison.rounds import ReadMode, RunMetrics
from knowledge.partition import PartitionState
from parallel.answers import (
    Answer, BatchedMerge, LatinSquareMerge, SortOutcome, run_merge_level
)
from utils.errors import ConfigError


def _check_k_hint(answers: List[Answer], k_hint: Optional[int]) -> int:
    """Largest class count in any answer; raises if it already exceeds the hint"""
    discovered = max(answer.k for answer in answers)
    if k_hint is not None and discovered > k_hint:
        raise ConfigError(f"k_hint={k_hint} is below the {discovered} classes already found")
    return discovered


def _current_k(answers: List[Answer], k_hint: Optional[int]) -> int:
    discovered = _check_k_hint(answers, k_hint)
    return discovered if k_hint is None else k_hint


def _prepare(oracle: Oracle, n: Optional[int], k_hint: Optional[int], metrics: Optional[RunMetrics]):
    n = oracle.n if n is None else n
    if n < 1:
        raise ConfigError(f"Need at least one element, got n={n}")
    if k_hint is not None and k_hint < 1:
        raise ConfigError(f"k_hint must be >= 1, got {k_hint}")
    metrics = metrics if metrics is not None else RunMetrics()
    return n, PartitionState(n), metrics


def er_sort(
        oracle: Oracle,
        n: Optional[int] = None,
        k_hint: Optional[int] = None,
        prune: bool = True,
        metrics: Optional[RunMetrics] = None
) -> SortOutcome:
    """
    ER equivalence-class sort in O(k log n) rounds

    Each level merges neighbouring answers pairwise; a pair with k_a and
    k_b classes needs at most max(k_a, k_b) rounds, and all pairs of a
    level run in the same rounds. An odd answer out waits a level.

    Args:
        oracle: Oracle answering the tests
        n: Element count (defaults to oracle.n)
        k_hint: Upper bound on the number of classes, if known
        prune: Skip tests whose answer is already entailed
        metrics: Accounting to continue (a fresh one if omitted)

    Returns:
        SortOutcome with the complete partition
    """
    n, knowledge, metrics = _prepare(oracle, n, k_hint, metrics)
    answers = [Answer.singleton(e) for e in range(n)]
    levels = 0

    while len(answers) > 1:
        _check_k_hint(answers, k_hint)
        tasks = [
            LatinSquareMerge(answers[i], answers[i + 1], knowledge, prune)
            for i in range(0, len(answers) - 1, 2)
        ]
        leftover = [answers[-1]] if len(answers) % 2 else []
        run_merge_level(tasks, oracle, knowledge, metrics, ReadMode.ER)
        answers = [task.result() for task in tasks] + leftover
        levels += 1

    return SortOutcome(knowledge, metrics, {'levels': levels})


def cr_sort(
        oracle: Oracle,
        n: Optional[int] = None,
        k_hint: Optional[int] = None,
        prune: bool = True,
        metrics: Optional[RunMetrics] = None
) -> SortOutcome:
    """
    CR equivalence-class sort in O(k + log log n) rounds with n processors

    Phase 1 merges answers in pairs while each answer has fewer than 4k^2
    processors. Phase 2 then merges groups of c = P // k^2 answers, where
    P is the processor count per answer; all C(c, 2) k^2 tests of a group
    fit in one round.

    Args:
        oracle: Oracle answering the tests
        n: Element count (defaults to oracle.n)
        k_hint: Upper bound on the number of classes, if known
        prune: Skip tests whose answer is already entailed
        metrics: Accounting to continue (a fresh one if omitted)

    Returns:
        SortOutcome; details record where phase 2 began
    """
    n, knowledge, metrics = _prepare(oracle, n, k_hint, metrics)
    answers = [Answer.singleton(e) for e in range(n)]
    details = {'phase1_levels': 0, 'phase2_levels': 0,
               'phase2_processors_per_answer': None, 'phase2_k': None}
    phase_two = False

    while len(answers) > 1:
        per_answer = n // len(answers)
        k = _current_k(answers, k_hint)

        if not phase_two and per_answer >= 4 * k * k:
            phase_two = True
            details['phase2_processors_per_answer'] = per_answer
            details['phase2_k'] = k

        c = max(2, per_answer // (k * k)) if phase_two else 2

        tasks = []
        merged: List[Answer] = []
        for start in range(0, len(answers), c):
            chunk = answers[start:start + c]
            if len(chunk) == 1:
                merged.append(chunk[0])
                continue
            tasks.append(BatchedMerge(chunk, knowledge, budget=len(chunk) * per_answer, prune=prune))

        run_merge_level(tasks, oracle, knowledge, metrics, ReadMode.CR, processors=n)
        answers = [task.result() for task in tasks] + merged
        details['phase2_levels' if phase_two else 'phase1_levels'] += 1

    return SortOutcome(knowledge, metrics, details)
