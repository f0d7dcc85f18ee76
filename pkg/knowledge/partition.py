"""
Knowledge graph of an equivalence-class sorting run

Vertices are groups of elements already known to be equivalent; an edge
between two groups records that they are known to be different. A Same
answer contracts two vertices, a Different answer adds an edge. Sorting
is finished once the graph is a clique.

Groups live in a union-find forest (path compression, union by size).
Edges are kept as adjacency sets keyed by group root; on a merge the
losing root's edges are re-hung onto the winner and duplicates collapse.
"""

from enum import Enum
from typing import Dict, List, Set

from comparison.oracle import ComparisonResult
from utils.errors import ConfigError, ContradictionError


class Relation(Enum):
    """What the knowledge graph entails about a pair"""
    KNOWN_SAME = "known_same"
    KNOWN_DIFFERENT = "known_different"
    UNKNOWN = "unknown"


class PartitionState:
    """Union-find forest plus known-distinct edges between group roots

    Example:
        >>> state = PartitionState(3)
        >>> state.apply_result(0, 1, ComparisonResult.SAME)
        >>> state.apply_result(1, 2, ComparisonResult.DIFFERENT)
        >>> state.relation_known(0, 2)
        <Relation.KNOWN_DIFFERENT: 'known_different'>
        >>> state.is_complete()
        True
    """

    def __init__(self, n: int):
        if n < 1:
            raise ConfigError(f"PartitionState needs n >= 1, got {n}")
        self.n = n
        self.parent: List[int] = list(range(n))
        self.size: List[int] = [1] * n
        self.adjacent: Dict[int, Set[int]] = {}
        self.group_count = n
        self.edge_count = 0

    # -- union-find -------------------------------------------------------

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        # path compression
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def group_size(self, x: int) -> int:
        return self.size[self.find(x)]

    def group_degree(self, x: int) -> int:
        """Number of groups known to differ from x's group"""
        neighbours = self.adjacent.get(self.find(x))
        return len(neighbours) if neighbours else 0

    def neighbour_roots(self, x: int) -> Set[int]:
        return self.adjacent.get(self.find(x), set())

    def is_resolved(self, x: int) -> bool:
        """True when x's group has a known relation to every other group"""
        return self.group_degree(x) == self.group_count - 1

    # -- updates ----------------------------------------------------------

    def _edge(self, a: int, b: int):
        self.adjacent.setdefault(a, set()).add(b)
        self.adjacent.setdefault(b, set()).add(a)
        self.edge_count += 1

    def _merge(self, a: int, b: int):
        if self.size[a] < self.size[b]:
            a, b = b, a
        # b is folded into a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.group_count -= 1

        loser_edges = self.adjacent.pop(b, None)
        if not loser_edges:
            return
        winner_edges = self.adjacent.setdefault(a, set())
        for other in loser_edges:
            other_edges = self.adjacent[other]
            other_edges.discard(b)
            if other in winner_edges:
                self.edge_count -= 1
            else:
                winner_edges.add(other)
                other_edges.add(a)

    def apply_result(self, x: int, y: int, result: ComparisonResult):
        """
        Record the answer to an equivalence test

        Args:
            x, y: Distinct element ids
            result: Oracle answer

        Raises:
            ContradictionError: If the answer conflicts with what is known
        """
        if x == y:
            raise ContradictionError(f"Element {x} compared with itself")
        rx, ry = self.find(x), self.find(y)

        if result is ComparisonResult.SAME:
            if rx == ry:
                return
            if ry in self.adjacent.get(rx, ()):
                raise ContradictionError(
                    f"Oracle said ({x}, {y}) are equivalent but their groups are known distinct"
                )
            self._merge(rx, ry)
        else:
            if rx == ry:
                raise ContradictionError(
                    f"Oracle said ({x}, {y}) differ but they are already known equivalent"
                )
            if ry not in self.adjacent.get(rx, ()):
                self._edge(rx, ry)

    # -- queries ----------------------------------------------------------

    def relation_known(self, x: int, y: int) -> Relation:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return Relation.KNOWN_SAME
        if ry in self.adjacent.get(rx, ()):
            return Relation.KNOWN_DIFFERENT
        return Relation.UNKNOWN

    def is_complete(self) -> bool:
        g = self.group_count
        return self.edge_count == g * (g - 1) // 2

    def groups(self) -> List[List[int]]:
        """Partition of [0, n) ordered by smallest member"""
        members: Dict[int, List[int]] = {}
        for element in range(self.n):
            members.setdefault(self.find(element), []).append(element)
        return sorted(members.values(), key=lambda group: group[0])

    def members_of(self, x: int) -> List[int]:
        root = self.find(x)
        return [e for e in range(self.n) if self.find(e) == root]


def new_partition(n: int) -> PartitionState:
    """n singleton groups, no edges"""
    return PartitionState(n)


def apply_result(state: PartitionState, x: int, y: int, result: ComparisonResult) -> PartitionState:
    state.apply_result(x, y, result)
    return state


def relation_known(state: PartitionState, x: int, y: int) -> Relation:
    return state.relation_known(x, y)


def is_complete(state: PartitionState) -> bool:
    return state.is_complete()


def groups(state: PartitionState) -> List[List[int]]:
    return state.groups()
