"""Solution records and the predicates they are checked against."""

from dataclasses import dataclass
from typing import List

from ..graph.bitset import VertexSet, bit, iter_bits, members
from ..graph.core import Graph, WeightedGraph


@dataclass(frozen=True)
class Solution:
    weight: int
    chosen: VertexSet

    @property
    def vertices(self) -> List[int]:
        return members(self.chosen)

    def __add__(self, other: "Solution") -> "Solution":
        return Solution(self.weight + other.weight, self.chosen | other.chosen)


EMPTY_SOLUTION = Solution(0, 0)


def is_independent_set(G: Graph, S: VertexSet) -> bool:
    return all(G.adjacency[v] & S == 0 for v in iter_bits(S))


def is_efficient_dominating_set(G: Graph, S: VertexSet) -> bool:
    """Every vertex has exactly one member of S in its closed neighborhood."""
    for v in range(G.n):
        if ((G.adjacency[v] | bit(v)) & S).bit_count() != 1:
            return False
    return True


def verify_solution(Gw: WeightedGraph, solution: Solution, problem: str) -> bool:
    """Check a solution against the predicate of ``problem`` ("mwis" or "eds")
    and its weight sum."""
    if Gw.weight_of(solution.chosen) != solution.weight:
        return False
    if problem == "mwis":
        return is_independent_set(Gw.graph, solution.chosen)
    if problem == "eds":
        return is_efficient_dominating_set(Gw.graph, solution.chosen)
    raise ValueError(f"unknown problem {problem!r}")
