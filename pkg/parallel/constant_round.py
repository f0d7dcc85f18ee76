"""
Constant-round ER sort for inputs whose smallest class is >= lambda * n

1. Draw H_d (no comparisons, not counted).
2. Compare along every cycle: even-position arcs in one round, odd in
   the next, plus one residual round when n is odd. Every cycle issues
   its sub-rounds; only arcs already compared this attempt are dropped.
3. Strongly connected components of the Same-answered arcs are
   class-pure. Each one with at least lambda*n/8 members is compared
   against every other element, |C| comparisons per round.

If some class has no large component the run fails; er_constant_retry
halves lambda and tries again.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import networkx as nx
import numpy as np

from comparison.oracle import Oracle
from comparison.rounds import Pair, ReadMode, RoundSchedule, RunMetrics, canonical_pair, execute_round
from knowledge.partition import PartitionState, Relation
from parallel.answers import SortOutcome
from parallel.cycles import GAMMA, LAMBDA_MAX, CycleUnionGraph, compute_d, sample_cycle_union
from parallel.group_sort import er_sort
from utils.errors import ConfigError, ConstantRoundFailure


@dataclass(frozen=True)
class ConstantRoundParams:
    """lambda (smallest class fraction), gamma and the cycle count d"""
    lambda_frac: float
    gamma: float = GAMMA
    override_d: Optional[int] = None

    def __post_init__(self):
        if not (0.0 < self.lambda_frac <= LAMBDA_MAX):
            raise ConfigError(f"lambda must be in (0, {LAMBDA_MAX}], got {self.lambda_frac}")
        if self.override_d is not None and self.override_d < 1:
            raise ConfigError(f"override_d must be >= 1, got {self.override_d}")

    @property
    def d(self) -> int:
        if self.override_d is not None:
            return self.override_d
        return compute_d(self.lambda_frac)

    def component_threshold(self, n: int) -> float:
        return self.lambda_frac * n / 8

    def cycles_for(self, n: int) -> int:
        """Cycle count for n elements; a computed d stops at (n - 1) / 2 cycles,
        where H_d already has as many arcs as there are pairs"""
        if self.override_d is not None:
            return self.override_d
        return min(self.d, max(1, math.ceil((n - 1) / 2)))


def _cycle_subrounds(graph: CycleUnionGraph, index: int) -> List[List[Pair]]:
    arcs = graph.cycle_arcs(index)
    n = graph.n
    if n % 2 == 0:
        return [arcs[0::2], arcs[1::2]]
    # arc n-1 closes the cycle onto pi(0) and clashes with arc 0
    return [arcs[0:n - 1:2], arcs[1:n - 1:2], [arcs[n - 1]]]


def _run(oracle, schedule_pairs, knowledge, metrics) -> int:
    schedule = RoundSchedule.from_pairs(schedule_pairs)
    results = execute_round(oracle, schedule, metrics, mode=ReadMode.ER)
    for (x, y), result in zip(schedule.pairs, results):
        knowledge.apply_result(x, y, result)
    return 1 if len(schedule) else 0


def _same_arc_components(graph: CycleUnionGraph, knowledge: PartitionState) -> List[List[int]]:
    same = nx.DiGraph()
    for u, v in sorted(graph.arcs()):
        if knowledge.find(u) == knowledge.find(v):
            same.add_edge(u, v)
    components = [sorted(component) for component in nx.strongly_connected_components(same)]
    return sorted(components, key=lambda members: members[0])


def _small_n_sort(oracle, n, knowledge, metrics) -> SortOutcome:
    if n == 2:
        _run(oracle, [(0, 1)], knowledge, metrics)
    return SortOutcome(knowledge, metrics, {'step2_rounds': 0, 'component_rounds': []})


def er_constant_sort(
        oracle: Oracle,
        params: ConstantRoundParams,
        rng_seed: int,
        n: Optional[int] = None,
        prune: bool = True,
        knowledge: Optional[PartitionState] = None,
        metrics: Optional[RunMetrics] = None
) -> SortOutcome:
    """
    Sort in a number of ER rounds that depends on lambda but not on n

    Args:
        oracle: Oracle answering the tests
        params: lambda, gamma and d
        rng_seed: Seed for H_d
        n: Element count (defaults to oracle.n)
        prune: Skip step-3 tests whose answer is already entailed
        knowledge: Knowledge graph to continue (fresh if omitted)
        metrics: Accounting to continue (fresh if omitted)

    Returns:
        SortOutcome; details hold step-2 rounds, kept component sizes and
        the rounds spent on each component

    Raises:
        ConstantRoundFailure: If some element is still unclassified
    """
    n = oracle.n if n is None else n
    knowledge = knowledge if knowledge is not None else PartitionState(n)
    metrics = metrics if metrics is not None else RunMetrics()
    if n < 3:
        return _small_n_sort(oracle, n, knowledge, metrics)

    # Step 1
    graph = sample_cycle_union(n, params.cycles_for(n), rng_seed)

    # Step 2
    compared = set()
    step2_rounds = 0
    for index in range(graph.d):
        for subround in _cycle_subrounds(graph, index):
            pairs = []
            for u, v in subround:
                pair = canonical_pair(u, v)
                if pair in compared:
                    continue
                compared.add(pair)
                pairs.append(pair)
            step2_rounds += _run(oracle, pairs, knowledge, metrics)

    # Step 3
    threshold = params.component_threshold(n)
    kept = [c for c in _same_arc_components(graph, knowledge) if len(c) >= threshold]
    component_rounds = []
    for component in kept:
        inside = set(component)
        anchor = component[0]
        others = [
            e for e in range(n)
            if e not in inside
            and (not prune or knowledge.relation_known(anchor, e) is Relation.UNKNOWN)
        ]
        width = len(component)
        spent = 0
        for start in range(0, len(others), width):
            batch = others[start:start + width]
            spent += _run(oracle, list(zip(component, batch)), knowledge, metrics)
        component_rounds.append(spent)

    details = {
        'lambda_frac': params.lambda_frac,
        'd': graph.d,
        'step2_rounds': step2_rounds,
        'kept_components': [len(c) for c in kept],
        'component_rounds': component_rounds,
    }

    if not knowledge.is_complete():
        raise ConstantRoundFailure(
            f"{knowledge.group_count} groups left without a full classification "
            f"at lambda={params.lambda_frac:g}",
            lambda_frac=params.lambda_frac,
            unresolved_groups=sum(
                1 for group in knowledge.groups() if not knowledge.is_resolved(group[0])
            ),
        )
    return SortOutcome(knowledge, metrics, details)


def er_constant_retry(
        oracle: Oracle,
        rng_seed: int,
        n: Optional[int] = None,
        override_d: Optional[int] = None,
        prune: bool = True,
        start_lambda: float = LAMBDA_MAX,
        metrics: Optional[RunMetrics] = None
) -> SortOutcome:
    """
    Constant-round sort when lambda is unknown

    Starts at lambda = 0.4 and halves it after every failure. Knowledge
    and metrics carry over between attempts. Falls back to er_sort only
    once lambda drops below 1/n.

    Returns:
        SortOutcome; details record attempts, the final lambda and
        whether the fallback ran
    """
    n = oracle.n if n is None else n
    if n < 1:
        raise ConfigError(f"Need at least one element, got n={n}")
    metrics = metrics if metrics is not None else RunMetrics()
    knowledge = PartitionState(n)
    seeds = np.random.SeedSequence(rng_seed).spawn(64)

    lambda_frac = start_lambda
    attempts = 0
    while lambda_frac >= 1.0 / n and attempts < len(seeds):
        params = ConstantRoundParams(lambda_frac, override_d=override_d)
        attempt_seed = int(seeds[attempts].generate_state(1)[0])
        attempts += 1
        try:
            outcome = er_constant_sort(
                oracle, params, attempt_seed, n=n, prune=prune,
                knowledge=knowledge, metrics=metrics
            )
        except ConstantRoundFailure:
            lambda_frac /= 2
            continue
        outcome.details.update({'attempts': attempts, 'final_lambda': lambda_frac, 'fallback': False})
        return outcome

    outcome = er_sort(oracle, n=n, prune=prune, metrics=metrics)
    outcome.details.update({'attempts': attempts, 'final_lambda': lambda_frac, 'fallback': True})
    return outcome

