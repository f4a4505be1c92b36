"""Brute-force reference implementations.

These work on networkx graphs and Python sets rather than on the bitset
machinery the solvers use, so agreement between the two is meaningful.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Set, Tuple

import networkx as nx

from ..errors import ClaimViolation, LimitExceeded
from ..graph.bitset import VertexSet, mask_of
from ..graph.core import Graph, WeightedGraph
from .solution import Solution

logger = logging.getLogger(__name__)


@dataclass
class OracleLimits:
    """Largest vertex count each oracle accepts."""
    mwis: int = 30
    eds: int = 25
    separators: int = 16
    pmcs: int = 16
    induced_path: int = 12


@dataclass(frozen=True)
class EDSOracleResult:
    best: Solution
    cardinality: int
    count: int


def _check_limit(n: int, limit: int, name: str) -> None:
    if n > limit:
        raise LimitExceeded(f"{name} oracle accepts n <= {limit}, got n = {n}")


def mwis_bruteforce(Gw: WeightedGraph, limits: Optional[OracleLimits] = None) -> Solution:
    """Exact MWIS by include/exclude branching on a maximum-degree vertex."""
    limits = limits or OracleLimits()
    _check_limit(Gw.n, limits.mwis, "MWIS")
    Gw.require_non_negative()
    nx_graph = Gw.graph.to_networkx()
    weights = Gw.weights

    def best(remaining: FrozenSet[int]) -> Tuple[int, FrozenSet[int]]:
        if not remaining:
            return 0, frozenset()
        pivot = max(
            sorted(remaining),
            key=lambda v: sum(1 for u in nx_graph[v] if u in remaining),
        )
        degree = sum(1 for u in nx_graph[pivot] if u in remaining)
        if degree == 0:
            # no edges left: take everything
            return sum(weights[v] for v in remaining), remaining
        without_weight, without = best(remaining - {pivot})
        with_weight, with_set = best(remaining - {pivot} - set(nx_graph[pivot]))
        with_weight += weights[pivot]
        if with_weight > without_weight:
            return with_weight, with_set | {pivot}
        return without_weight, without

    weight, chosen = best(frozenset(range(Gw.n)))
    return Solution(weight, mask_of(chosen))


def enumerate_eds(G: Graph, limits: Optional[OracleLimits] = None) -> Iterator[FrozenSet[int]]:
    """Every efficient dominating set of G, each exactly once.

    The smallest undominated vertex picks its unique dominator from its
    closed neighborhood; candidates that would double-dominate are skipped.
    """
    limits = limits or OracleLimits()
    _check_limit(G.n, limits.eds, "EDS")
    closed: List[Set[int]] = [set(G.to_networkx()[v]) | {v} for v in range(G.n)]

    def extend(chosen: List[int], dominated: Set[int]) -> Iterator[FrozenSet[int]]:
        undominated = next((v for v in range(G.n) if v not in dominated), None)
        if undominated is None:
            yield frozenset(chosen)
            return
        for candidate in sorted(closed[undominated]):
            if closed[candidate] & dominated:
                continue
            chosen.append(candidate)
            yield from extend(chosen, dominated | closed[candidate])
            chosen.pop()

    yield from extend([], set())


def eds_bruteforce(
    Gw: WeightedGraph, limits: Optional[OracleLimits] = None
) -> Optional[EDSOracleResult]:
    """Maximum-weight EDS, the common cardinality of all EDSs, and their count.

    Returns None when G has no efficient dominating set.

    Raises:
        ClaimViolation: if two EDSs of different cardinality are found.
    """
    best: Optional[Tuple[int, FrozenSet[int]]] = None
    cardinality = None
    count = 0
    for eds in enumerate_eds(Gw.graph, limits):
        count += 1
        if cardinality is None:
            cardinality = len(eds)
        elif cardinality != len(eds):
            raise ClaimViolation(
                "equal-cardinality",
                f"EDSs of sizes {cardinality} and {len(eds)} in one graph",
            )
        weight = sum(Gw.weights[v] for v in eds)
        if best is None or weight > best[0]:
            best = (weight, eds)
    if best is None:
        return None
    return EDSOracleResult(Solution(best[0], mask_of(best[1])), cardinality, count)


def _subsets(n: int, nonempty: bool = False) -> Iterator[Tuple[int, ...]]:
    start = 1 if nonempty else 0
    for size in range(start, n + 1):
        yield from itertools.combinations(range(n), size)


def _components_outside(nx_graph: nx.Graph, removed: Set[int]) -> List[Set[int]]:
    rest = nx_graph.subgraph(set(nx_graph.nodes) - removed)
    return [set(c) for c in nx.connected_components(rest)]


def _neighborhood(nx_graph: nx.Graph, component: Set[int]) -> Set[int]:
    return {u for v in component for u in nx_graph[v]} - component


def minimal_separators_bruteforce(
    G: Graph, limits: Optional[OracleLimits] = None
) -> List[VertexSet]:
    """All S with at least two full components in G − S."""
    limits = limits or OracleLimits()
    _check_limit(G.n, limits.separators, "minimal separator")
    nx_graph = G.to_networkx()
    found = []
    for subset in _subsets(G.n):
        S = set(subset)
        full = sum(
            1
            for component in _components_outside(nx_graph, S)
            if S <= _neighborhood(nx_graph, component)
        )
        if full >= 2:
            found.append(mask_of(S))
    return found


def pmcs_bruteforce(G: Graph, limits: Optional[OracleLimits] = None) -> List[VertexSet]:
    """All non-empty Ω passing both conditions of the PMC characterization."""
    limits = limits or OracleLimits()
    _check_limit(G.n, limits.pmcs, "PMC")
    nx_graph = G.to_networkx()
    found = []
    for subset in _subsets(G.n, nonempty=True):
        omega = set(subset)
        neighborhoods = [
            _neighborhood(nx_graph, c) for c in _components_outside(nx_graph, omega)
        ]
        if any(nc == omega for nc in neighborhoods):
            continue
        completed = all(
            nx_graph.has_edge(x, y) or any({x, y} <= nc for nc in neighborhoods)
            for x, y in itertools.combinations(sorted(omega), 2)
        )
        if completed:
            found.append(mask_of(omega))
    return found


def induced_path_bruteforce(
    G: Graph, k: int, limits: Optional[OracleLimits] = None
) -> bool:
    """Scan every k-subset for one inducing a path."""
    limits = limits or OracleLimits()
    _check_limit(G.n, limits.induced_path, "induced path")
    if k < 1 or k > G.n:
        return False
    nx_graph = G.to_networkx()
    for subset in itertools.combinations(range(G.n), k):
        sub = nx_graph.subgraph(subset)
        if (
            sub.number_of_edges() == k - 1
            and nx.is_connected(sub)
            and max((d for _, d in sub.degree()), default=0) <= 2
        ):
            return True
    return False
