"""Induced path and small induced pattern detection."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from ..errors import PatternBudgetExceeded
from .bitset import EMPTY, bit, iter_bits
from .core import Graph, path_graph

logger = logging.getLogger(__name__)

DEFAULT_PATTERN_BUDGET = 10**8


@dataclass(frozen=True)
class InducedPath:
    vertices: tuple

    def __len__(self) -> int:
        return len(self.vertices)

    def is_valid_in(self, G: Graph) -> bool:
        """Check the induced-path conditions against G."""
        if len(set(self.vertices)) != len(self.vertices):
            return False
        for i, u in enumerate(self.vertices):
            for j in range(i + 1, len(self.vertices)):
                if G.has_edge(u, self.vertices[j]) != (j == i + 1):
                    return False
        return True


@dataclass(frozen=True)
class PatternGraph:
    """A small pattern H for induced-subgraph search."""

    name: str
    graph: Graph

    def __post_init__(self) -> None:
        if self.graph.n > 8:
            raise ValueError(f"pattern {self.name} has {self.graph.n} vertices, limit is 8")


def e_graph() -> PatternGraph:
    """P5 a-b-c-d-e with a pendant vertex f on the middle vertex c."""
    return PatternGraph(
        "E", Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    )


def path_pattern(k: int) -> PatternGraph:
    return PatternGraph(f"P{k}", path_graph(k))


class _Counter:
    def __init__(self, budget: int, label: str) -> None:
        self.budget = budget
        self.used = 0
        self.label = label

    def tick(self) -> None:
        self.used += 1
        if self.used > self.budget:
            raise PatternBudgetExceeded(
                f"{self.label}: search exceeded {self.budget} extensions"
            )


def find_induced_path(
    G: Graph, k: int, budget: int = DEFAULT_PATTERN_BUDGET
) -> Optional[InducedPath]:
    """Return the first induced path on k vertices in DFS order, or None.

    Raises:
        PatternBudgetExceeded: if more than ``budget`` extensions are tried.
    """
    if k < 1:
        raise ValueError(f"path length must be at least 1, got {k}")
    if k > G.n:
        return None
    counter = _Counter(budget, f"induced P{k} search")
    adjacency = G.adjacency
    path: List[int] = []

    # blocked: closed neighborhoods of every path vertex except the last
    def extend(blocked: int) -> bool:
        if len(path) == k:
            return True
        last = path[-1]
        candidates = adjacency[last] & ~blocked & ~bit(last)
        next_blocked = blocked | adjacency[last] | bit(last)
        for w in iter_bits(candidates):
            counter.tick()
            path.append(w)
            if extend(next_blocked):
                return True
            path.pop()
        return False

    for start in range(G.n):
        counter.tick()
        path.append(start)
        if extend(EMPTY):
            logger.debug("Found induced P%d: %s", k, path)
            return InducedPath(tuple(path))
        path.pop()
    return None


def find_induced_path_through(
    G: Graph, v: int, k: int, budget: int = DEFAULT_PATTERN_BUDGET
) -> Optional[InducedPath]:
    """An induced path on k vertices that contains v, or None.

    The right end grows first; every prefix then tries to reach k vertices
    by growing the left end only, so each path is met once per position of v.
    """
    if k < 1:
        raise ValueError(f"path length must be at least 1, got {k}")
    if k > G.n:
        return None
    counter = _Counter(budget, f"induced P{k} search through {v}")
    adjacency = G.adjacency
    path: List[int] = [v]

    def extend_left(blocked: int) -> bool:
        if len(path) == k:
            return True
        first = path[0]
        next_blocked = blocked | adjacency[first] | bit(first)
        for w in iter_bits(adjacency[first] & ~blocked & ~bit(first)):
            counter.tick()
            path.insert(0, w)
            if extend_left(next_blocked):
                return True
            path.pop(0)
        return False

    # blocked_right: closed neighborhoods of path[:-1]; blocked_left: of path[1:]
    def extend_right(blocked_right: int, blocked_left: int) -> bool:
        if extend_left(blocked_left):
            return True
        last = path[-1]
        next_right = blocked_right | adjacency[last] | bit(last)
        for w in iter_bits(adjacency[last] & ~blocked_right & ~bit(last)):
            counter.tick()
            path.append(w)
            if extend_right(next_right, blocked_left | adjacency[w] | bit(w)):
                return True
            path.pop()
        return False

    if extend_right(EMPTY, EMPTY):
        return InducedPath(tuple(path))
    return None


def is_pk_free(G: Graph, k: int, budget: int = DEFAULT_PATTERN_BUDGET) -> bool:
    return find_induced_path(G, k, budget) is None


def _search_order(H: Graph) -> List[int]:
    """Pattern vertices ordered so each one after the first of its component
    has an earlier neighbor."""
    order: List[int] = []
    seen = 0
    for root in range(H.n):
        if (seen >> root) & 1:
            continue
        queue = [root]
        seen |= bit(root)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in iter_bits(H.adjacency[v] & ~seen):
                seen |= bit(u)
                queue.append(u)
    return order


def find_induced(
    G: Graph, H: PatternGraph, budget: int = DEFAULT_PATTERN_BUDGET
) -> Optional[Dict[int, int]]:
    """An adjacency- and non-adjacency-preserving injection V(H) → V(G), or None."""
    pattern = H.graph
    if pattern.n > G.n:
        return None
    if pattern.n == 0:
        return {}
    counter = _Counter(budget, f"induced {H.name} search")
    order = _search_order(pattern)
    image: Dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        h = order[i]
        anchors = [image[p] for p in iter_bits(pattern.adjacency[h]) if p in image]
        candidates = G.vertices & ~used
        for a in anchors:
            candidates &= G.adjacency[a]
        for g in iter_bits(candidates):
            counter.tick()
            if all(
                G.has_edge(g, image[p]) == pattern.has_edge(h, p) for p in image
            ):
                image[h] = g
                if place(i + 1, used | bit(g)):
                    return True
                del image[h]
        return False

    return dict(image) if place(0, EMPTY) else None


def contains_induced(G: Graph, H: PatternGraph, budget: int = DEFAULT_PATTERN_BUDGET) -> bool:
    return find_induced(G, H, budget) is not None
