"""
Adaptive adversary for comparison lower bounds

The adversary keeps a proper coloring of the knowledge graph in which
every color class is a candidate equivalence class. Unmarked elements
are singleton vertices and may still trade colors; marked elements are
frozen. A query is answered in four steps:

1. An unmarked element whose degree would pass the threshold gets the
   HIGH_ELEMENT_DEGREE mark.
2. If the two elements share a color and one is unmarked, try to swap
   that element's color with another unmarked element.
3. If no swap is possible, mark the whole color (HIGH_COLOR_DEGREE).
4. Answer by color: Same only when both are marked and share a color.

Two modes: UNIFORM (every class has size f) and SMALLEST_CLASS (a
special scc color of size ell that must be found).
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Union

from comparison.oracle import ComparisonResult, GroundTruth, Oracle
from knowledge.partition import PartitionState, Relation
from utils.errors import ConfigError, ResultsWriteError


class AdversaryMode(Enum):
    UNIFORM = "uniform"
    SMALLEST_CLASS = "smallest_class"


class ElementMark(Enum):
    HIGH_ELEMENT_DEGREE = "high_element_degree"
    HIGH_COLOR_DEGREE = "high_color_degree"


class Certificate(Enum):
    ACCEPT = "accept"
    MISTAKE = "mistake"


SCC_COLOR = 0


@dataclass
class AdversaryAnswer:
    """Answer to one query plus the swaps and marks it caused"""
    result: ComparisonResult
    actions: List[Dict[str, object]] = field(default_factory=list)


class AdversaryState:
    """Coloring, marks and mirrored knowledge of one adversarial run"""

    def __init__(self, n: int, mode: AdversaryMode, param: int, colors: Sequence[int]):
        self.n = n
        self.mode = mode
        self.param = param
        self.threshold = n / (4 * param)
        self.knowledge = PartitionState(n)
        self.color_of: List[int] = list(colors)
        self.elem_degree: List[int] = [0] * n
        self.elem_mark: List[Set[ElementMark]] = [set() for _ in range(n)]
        self.color_mark: Set[int] = set()
        self.comparisons = 0
        self.actions: List[Dict[str, object]] = []
        # comparisons made when each color got marked, with marked count before it
        self.color_mark_history: List[Dict[str, int]] = []

    # -- queries ----------------------------------------------------------

    @property
    def color_count(self) -> int:
        return len(set(self.color_of))

    def weight(self, x: int) -> int:
        return self.knowledge.group_size(x)

    def is_marked(self, x: int) -> bool:
        return bool(self.elem_mark[x])

    def marked_count(self) -> int:
        return sum(1 for marks in self.elem_mark if marks)

    def unmarked(self) -> List[int]:
        return [e for e in range(self.n) if not self.elem_mark[e]]

    def high_degree_only(self) -> int:
        """Elements marked for element degree but not through their color"""
        return sum(
            1 for marks in self.elem_mark
            if marks == {ElementMark.HIGH_ELEMENT_DEGREE}
        )

    def color_classes(self) -> List[List[int]]:
        members: Dict[int, List[int]] = {}
        for element, color in enumerate(self.color_of):
            members.setdefault(color, []).append(element)
        return sorted(members.values(), key=lambda group: group[0])

    def color_sizes(self) -> Dict[int, int]:
        sizes: Dict[int, int] = {}
        for color in self.color_of:
            sizes[color] = sizes.get(color, 0) + 1
        return sizes

    def labeling(self) -> GroundTruth:
        """A labeling consistent with every answer given so far"""
        return GroundTruth(tuple(self.color_of))

    # -- answering --------------------------------------------------------

    def _can_take(self, element: int, color: int) -> bool:
        color_of = self.color_of
        return all(color_of[root] != color for root in self.knowledge.neighbour_roots(element))

    def _swap_candidate(self, element: int, exclude: Sequence[int]) -> Optional[int]:
        color = self.color_of[element]
        for z in self.unmarked():
            if z in exclude or self.color_of[z] == color:
                continue
            if self._can_take(z, color) and self._can_take(element, self.color_of[z]):
                return z
        return None

    def _swap(self, element: int, other: int, reason: str, actions: List[Dict[str, object]]):
        color_of = self.color_of
        color_of[element], color_of[other] = color_of[other], color_of[element]
        actions.append({
            'step': self.comparisons, 'action': 'swap', 'reason': reason,
            'element': element, 'with': other,
            'element_color': color_of[element], 'with_color': color_of[other],
        })

    def _mark_element(self, element: int, actions: List[Dict[str, object]]):
        self.elem_mark[element].add(ElementMark.HIGH_ELEMENT_DEGREE)
        actions.append({
            'step': self.comparisons, 'action': 'mark_element',
            'element': element, 'degree': self.elem_degree[element],
        })

    def _mark_color(self, color: int, actions: List[Dict[str, object]]):
        self.color_mark_history.append({
            'color': color,
            'comparisons': self.comparisons,
            'marked_before': self.marked_count(),
        })
        self.color_mark.add(color)
        for element, element_color in enumerate(self.color_of):
            if element_color == color:
                self.elem_mark[element].add(ElementMark.HIGH_COLOR_DEGREE)
        actions.append({'step': self.comparisons, 'action': 'mark_color', 'color': color})

    def _degree_marks(self, x: int, y: int, actions: List[Dict[str, object]]):
        for element in (x, y):
            if self.is_marked(element) or self.elem_degree[element] + 1 <= self.threshold:
                continue
            if self.mode is AdversaryMode.SMALLEST_CLASS and self.color_of[element] == SCC_COLOR:
                z = self._swap_candidate(element, (x, y))
                if z is not None:
                    self._swap(element, z, 'protect_scc', actions)
            self._mark_element(element, actions)

    def _same_color_cases(self, x: int, y: int, actions: List[Dict[str, object]]):
        if self.color_of[x] != self.color_of[y]:
            return
        if self.is_marked(x) and self.is_marked(y):
            return
        for element in sorted(e for e in (x, y) if not self.is_marked(e)):
            z = self._swap_candidate(element, (x, y))
            if z is not None:
                self._swap(element, z, 'split_pair', actions)
                return
        self._mark_color(self.color_of[x], actions)

    def answer(self, x: int, y: int) -> AdversaryAnswer:
        if x == y:
            raise ConfigError(f"Element {x} compared with itself")
        for element in (x, y):
            if not 0 <= element < self.n:
                raise ConfigError(f"Element {element} outside [0, {self.n})")

        actions: List[Dict[str, object]] = []
        self.comparisons += 1
        known = self.knowledge.relation_known(x, y)
        if known is not Relation.UNKNOWN:
            # Already revealed: repeat the answer without touching the coloring
            result = (ComparisonResult.SAME if known is Relation.KNOWN_SAME
                      else ComparisonResult.DIFFERENT)
            actions.append({'step': self.comparisons, 'action': 'known', 'x': x, 'y': y})
        else:
            self._degree_marks(x, y, actions)
            self._same_color_cases(x, y, actions)
            same = (self.is_marked(x) and self.is_marked(y)
                    and self.color_of[x] == self.color_of[y])
            result = ComparisonResult.SAME if same else ComparisonResult.DIFFERENT
            self.knowledge.apply_result(x, y, result)
            if result is ComparisonResult.DIFFERENT:
                self.elem_degree[x] += 1
                self.elem_degree[y] += 1

        self.actions.extend(actions)
        return AdversaryAnswer(result, actions)

    # -- export -----------------------------------------------------------

    def export_actions(self, path: Union[str, Path]) -> Path:
        """Write the action log as JSON lines"""
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as handle:
                for action in self.actions:
                    handle.write(json.dumps(action, sort_keys=True) + "\n")
        except OSError as e:
            raise ResultsWriteError(f"Could not write action log to {path}: {e}")
        return path


class AdversaryOracle(Oracle):
    """Lets any sorting algorithm run against an adversary"""

    def __init__(self, state: AdversaryState):
        self.state = state

    @property
    def n(self) -> int:
        return self.state.n

    def compare(self, x: int, y: int) -> ComparisonResult:
        return self.state.answer(x, y).result


def new_uniform_adversary(n: int, f: int) -> AdversaryState:
    """
    Adversary for inputs whose classes all have size f

    Element e starts with color e mod (n / f), so each of the n / f
    colors covers exactly f singletons.

    Raises:
        ConfigError: If f does not divide n
    """
    if n < 1 or f < 1:
        raise ConfigError(f"Need n >= 1 and f >= 1, got n={n}, f={f}")
    if n % f:
        raise ConfigError(f"Class size f={f} does not divide n={n}")
    color_count = n // f
    return AdversaryState(n, AdversaryMode.UNIFORM, f, [e % color_count for e in range(n)])


def new_scc_adversary(n: int, ell: int) -> AdversaryState:
    """
    Adversary hiding a smallest class of size ell

    Elements 0..ell-1 carry the scc color; the other n - ell elements
    are spread as evenly as possible over max(1, (n - ell) // (ell + 1))
    colors.

    Raises:
        ConfigError: Unless 1 <= ell <= n / 2
    """
    if ell < 1 or 2 * ell > n:
        raise ConfigError(f"Smallest class size must satisfy 1 <= ell <= n/2, got ell={ell}, n={n}")
    rest = max(1, (n - ell) // (ell + 1))
    colors = [SCC_COLOR] * ell + [1 + (i % rest) for i in range(n - ell)]
    return AdversaryState(n, AdversaryMode.SMALLEST_CLASS, ell, colors)


def adversary_answer(state: AdversaryState, x: int, y: int) -> AdversaryAnswer:
    return state.answer(x, y)


def certify_floor(state: AdversaryState, claim: Union[Sequence[Sequence[int]], int]) -> Certificate:
    """
    Judge an algorithm's declared answer

    Args:
        state: Adversary after the run
        claim: The full partition (UNIFORM) or one element claimed to be
               in the smallest class (SMALLEST_CLASS)

    Returns:
        ACCEPT if no consistent recoloring refutes the claim
    """
    if state.mode is AdversaryMode.UNIFORM:
        if state.marked_count() < state.n:
            return Certificate.MISTAKE
        declared = sorted((sorted(int(e) for e in group) for group in claim), key=lambda g: g[0])
        return Certificate.ACCEPT if declared == state.color_classes() else Certificate.MISTAKE

    element = int(claim)
    scc_marked = any(
        state.elem_mark[e] for e in range(state.n) if state.color_of[e] == SCC_COLOR
    )
    if not scc_marked and state.marked_count() < state.n / 8:
        return Certificate.MISTAKE
    if state.is_marked(element) and state.color_of[element] == SCC_COLOR:
        return Certificate.ACCEPT
    return Certificate.MISTAKE


def marking_tally(state: AdversaryState) -> float:
    """i * n / 2 + j * n / (4 f): i marked colors, j degree-only marked elements"""
    return (len(state.color_mark) * state.n / 2
            + state.high_degree_only() * state.threshold)


def is_proper(state: AdversaryState) -> bool:
    """Groups are monochromatic and no known-distinct edge joins equal colors"""
    knowledge = state.knowledge
    color_of = state.color_of
    for element in range(state.n):
        root = knowledge.find(element)
        if color_of[element] != color_of[root]:
            return False
    for root, neighbours in knowledge.adjacent.items():
        if any(color_of[root] == color_of[other] for other in neighbours):
            return False
    return True


def is_equitable(state: AdversaryState) -> bool:
    """Color sizes match the mode's initial sizes"""
    sizes = state.color_sizes()
    if state.mode is AdversaryMode.UNIFORM:
        return all(size == state.param for size in sizes.values())
    if sizes.get(SCC_COLOR) != state.param:
        return False
    others = [size for color, size in sizes.items() if color != SCC_COLOR]
    return not others or max(others) - min(others) <= 1
