"""Minimal triangulations, clique trees, minimal separators and PMCs."""

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx

from ..errors import CentralBagNotFound, StructureViolation
from .bitset import VertexSet, bit, is_subset, iter_bits, members, popcount
from .core import Graph, connected_components, open_neighborhood

logger = logging.getLogger(__name__)

FillEdges = FrozenSet[Tuple[int, int]]


def _edge(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _restrict(G: Graph, within: Optional[VertexSet]) -> VertexSet:
    return G.vertices if within is None else within


def maximum_cardinality_search(G: Graph, within: Optional[VertexSet] = None) -> List[int]:
    """MCS visit order on G[within]; ties go to the smallest id."""
    remaining = _restrict(G, within)
    weight = {v: 0 for v in iter_bits(remaining)}
    order = []
    while remaining:
        z = max(iter_bits(remaining), key=lambda v: (weight[v], -v))
        order.append(z)
        remaining &= ~bit(z)
        for y in iter_bits(G.adjacency[z] & remaining):
            weight[y] += 1
    return order


def is_perfect_elimination_ordering(
    G: Graph, ordering: List[int], within: Optional[VertexSet] = None
) -> bool:
    """Later neighbors of every vertex must form a clique."""
    position = {v: i for i, v in enumerate(ordering)}
    scope = _restrict(G, within)
    later = 0
    for v in reversed(ordering):
        later_neighbors = G.adjacency[v] & scope & later
        if later_neighbors:
            parent = min(iter_bits(later_neighbors), key=position.__getitem__)
            rest = later_neighbors & ~bit(parent)
            if not is_subset(rest, G.adjacency[parent]):
                return False
        later |= bit(v)
    return True


def is_chordal(G: Graph, within: Optional[VertexSet] = None) -> Optional[List[int]]:
    """A perfect elimination ordering of G[within], or None if not chordal."""
    peo = list(reversed(maximum_cardinality_search(G, within)))
    if is_perfect_elimination_ordering(G, peo, within):
        return peo
    return None


def _mcs_m(G: Graph, within: Optional[VertexSet]) -> Tuple[FillEdges, List[int]]:
    """MCS-M: returns the fill and a perfect elimination ordering of G + fill."""
    unnumbered = _restrict(G, within)
    weight: Dict[int, int] = {v: 0 for v in iter_bits(unnumbered)}
    fill = set()
    numbering: List[int] = []
    while unnumbered:
        z = max(iter_bits(unnumbered), key=lambda v: (weight[v], -v))
        unnumbered &= ~bit(z)
        numbering.append(z)
        # Smallest possible maximum internal weight on a path z .. y through
        # unnumbered vertices.
        best: Dict[int, int] = {}
        heap = []
        for y in iter_bits(G.adjacency[z] & unnumbered):
            best[y] = -1
            heap.append((-1, y))
        heapq.heapify(heap)
        settled = 0
        while heap:
            bottleneck, u = heapq.heappop(heap)
            if (settled >> u) & 1 or bottleneck > best[u]:
                continue
            settled |= bit(u)
            through = max(bottleneck, weight[u])
            for x in iter_bits(G.adjacency[u] & unnumbered & ~settled):
                if through < best.get(x, through + 1):
                    best[x] = through
                    heapq.heappush(heap, (through, x))
        reached = [y for y, b in best.items() if b < weight[y]]
        for y in reached:
            weight[y] += 1
            if not G.has_edge(z, y):
                fill.add(_edge(z, y))
    return frozenset(fill), list(reversed(numbering))


def minimal_triangulation(G: Graph, within: Optional[VertexSet] = None) -> FillEdges:
    """Inclusion-minimal fill of G[within] computed with MCS-M."""
    fill, _ = _mcs_m(G, within)
    logger.debug("MCS-M added %d fill edges", len(fill))
    return fill


def is_minimal_triangulation(
    G: Graph, F: FillEdges, within: Optional[VertexSet] = None
) -> bool:
    """Chordal with F, and not chordal after dropping any single fill edge."""
    if any(G.has_edge(u, v) for u, v in F):
        return False
    if is_chordal(G.with_edges(F), within) is None:
        return False
    for f in F:
        if is_chordal(G.with_edges(F - {f}), within) is not None:
            return False
    return True


def maximal_cliques_from_peo(
    H: Graph, peo: List[int], within: Optional[VertexSet] = None
) -> List[VertexSet]:
    """Maximal cliques of a chordal graph, one candidate per PEO vertex."""
    scope = _restrict(H, within)
    later = 0
    candidates = []
    for v in reversed(peo):
        candidates.append(bit(v) | (H.adjacency[v] & scope & later))
        later |= bit(v)
    unique = sorted(set(candidates), key=lambda c: (-popcount(c), members(c)))
    maximal: List[VertexSet] = []
    for clique in unique:
        if not any(is_subset(clique, kept) for kept in maximal):
            maximal.append(clique)
    return sorted(maximal, key=members)


@dataclass
class CliqueTree:
    """Clique tree of a chordal completion; bag i is ``bags[i]``."""

    bags: List[VertexSet]
    tree_edges: List[Tuple[int, int]]
    root: Optional[int] = None
    parent: Dict[int, Optional[int]] = field(default_factory=dict)
    children: Dict[int, List[int]] = field(default_factory=dict)

    def neighbors(self, i: int) -> List[int]:
        return sorted(
            [b for a, b in self.tree_edges if a == i] + [a for a, b in self.tree_edges if b == i]
        )

    def rooted(self, root: int = 0) -> "CliqueTree":
        """Orient the tree away from ``root``; children keep index order."""
        parent: Dict[int, Optional[int]] = {root: None}
        children: Dict[int, List[int]] = {i: [] for i in range(len(self.bags))}
        queue = [root]
        while queue:
            t = queue.pop(0)
            for s in self.neighbors(t):
                if s not in parent:
                    parent[s] = t
                    children[t].append(s)
                    queue.append(s)
        if len(parent) != len(self.bags):
            raise StructureViolation("clique tree is not connected")
        return CliqueTree(list(self.bags), list(self.tree_edges), root, parent, children)

    def postorder(self) -> List[int]:
        if self.root is None:
            raise StructureViolation("clique tree must be rooted first")
        order: List[int] = []
        stack = [(self.root, False)]
        while stack:
            t, expanded = stack.pop()
            if expanded:
                order.append(t)
                continue
            stack.append((t, True))
            for s in reversed(self.children[t]):
                stack.append((s, False))
        return order

    def cones(self) -> Dict[int, VertexSet]:
        """Union of the bags in each rooted subtree."""
        cone: Dict[int, VertexSet] = {}
        for t in self.postorder():
            mask = self.bags[t]
            for s in self.children[t]:
                mask |= cone[s]
            cone[t] = mask
        return cone

    def is_coherent(self) -> bool:
        """Bags holding any one vertex form a connected subtree."""
        every = 0
        for bag in self.bags:
            every |= bag
        for v in iter_bits(every):
            holding = {i for i, bag in enumerate(self.bags) if (bag >> v) & 1}
            start = min(holding)
            seen = {start}
            queue = [start]
            while queue:
                t = queue.pop()
                for s in self.neighbors(t):
                    if s in holding and s not in seen:
                        seen.add(s)
                        queue.append(s)
            if seen != holding:
                return False
        return True


def clique_tree(G: Graph, F: FillEdges, within: Optional[VertexSet] = None) -> CliqueTree:
    """Clique tree of G + F as a maximum-weight spanning tree of the clique
    intersection graph (weight = |bag_i ∩ bag_j|, ties to smaller indices).

    Raises:
        StructureViolation: if G + F is not chordal.
    """
    H = G.with_edges(F)
    peo = is_chordal(H, within)
    if peo is None:
        raise StructureViolation("clique_tree called on a non-chordal completion")
    bags = maximal_cliques_from_peo(H, peo, within)
    intersection = nx.Graph()
    intersection.add_nodes_from(range(len(bags)))
    for i in range(len(bags)):
        for j in range(i + 1, len(bags)):
            intersection.add_edge(i, j, weight=popcount(bags[i] & bags[j]))
    spanning = nx.maximum_spanning_tree(intersection, algorithm="kruskal")
    tree_edges = sorted(_edge(u, v) for u, v in spanning.edges())
    return CliqueTree(bags, tree_edges)


def central_bag(G: Graph, T: CliqueTree, within: Optional[VertexSet] = None) -> int:
    """First bag whose removal leaves components of at most ⌊n/2⌋ vertices.

    Raises:
        CentralBagNotFound: if no bag qualifies.
    """
    scope = _restrict(G, within)
    half = popcount(scope) // 2
    for index, bag in enumerate(T.bags):
        if all(popcount(c) <= half for c in connected_components(G, scope & ~bag)):
            return index
    raise CentralBagNotFound(f"none of {len(T.bags)} bags is balanced")


def weighted_central_bag(
    G: Graph,
    T: CliqueTree,
    mu: Mapping[int, Fraction],
    within: Optional[VertexSet] = None,
) -> int:
    """First bag leaving only components of mass at most 1/2 under ``mu``."""
    scope = _restrict(G, within)
    half = Fraction(1, 2)
    for index, bag in enumerate(T.bags):
        if all(
            sum((mu.get(v, 0) for v in iter_bits(c)), Fraction(0)) <= half
            for c in connected_components(G, scope & ~bag)
        ):
            return index
    raise CentralBagNotFound(f"no bag of {len(T.bags)} is balanced for the measure")


def full_components(
    G: Graph, S: VertexSet, within: Optional[VertexSet] = None
) -> List[VertexSet]:
    scope = _restrict(G, within)
    return [
        c
        for c in connected_components(G, scope & ~S)
        if is_subset(S, open_neighborhood(G, c))
    ]


def is_minimal_separator(G: Graph, S: VertexSet, within: Optional[VertexSet] = None) -> bool:
    return len(full_components(G, S, within)) >= 2


def is_pmc(G: Graph, omega: VertexSet, within: Optional[VertexSet] = None) -> bool:
    """Potential maximal clique test by the two-condition characterization."""
    if not omega:
        return False
    scope = _restrict(G, within)
    neighborhoods = [
        open_neighborhood(G, c) & scope for c in connected_components(G, scope & ~omega)
    ]
    if any(nc == omega for nc in neighborhoods):
        return False
    for x in iter_bits(omega):
        covered = G.adjacency[x] | bit(x)
        for nc in neighborhoods:
            if (nc >> x) & 1:
                covered |= nc
        if not is_subset(omega, covered):
            return False
    return True


def component_separators(
    G: Graph, omega: VertexSet, within: Optional[VertexSet] = None
) -> List[VertexSet]:
    """N(C) for every component C of G − Ω, each checked to be a minimal separator.

    Raises:
        StructureViolation: if some N(C) is not a minimal separator.
    """
    scope = _restrict(G, within)
    separators = []
    for component in connected_components(G, scope & ~omega):
        separator = open_neighborhood(G, component) & scope
        if not is_minimal_separator(G, separator, within):
            raise StructureViolation(
                f"N(C) = {members(separator)} is not a minimal separator; "
                f"{members(omega)} is not a PMC"
            )
        separators.append(separator)
    return separators
