"""Immutable bitset graphs, neighborhoods, components and distances."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .bitset import EMPTY, VertexSet, bit, full_mask, iter_bits, lowest, popcount

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over vertex ids 0..n-1.

    ``adjacency[v]`` is the bitmask of N(v). The constructor checks that the
    relation is symmetric and irreflexive.
    """

    n: int
    adjacency: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise ValueError(
                f"adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        everything = full_mask(self.n)
        for v, row in enumerate(self.adjacency):
            if row & ~everything:
                raise ValueError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (self.adjacency[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric on edge ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> Tuple["Graph", Dict[object, int]]:
        """Convert a networkx graph, relabelling nodes in sorted order."""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        graph = cls.from_edges(
            len(nodes), ((index[u], index[v]) for u, v in nx_graph.edges() if u != v)
        )
        return graph, index

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    @property
    def vertices(self) -> VertexSet:
        return full_mask(self.n)

    def neighbors(self, v: int) -> VertexSet:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adjacency[u] >> v) & 1 == 1

    def edges(self) -> List[Edge]:
        """All edges as (u, v) with u < v, sorted."""
        return [
            (u, v)
            for u in range(self.n)
            for v in iter_bits(self.adjacency[u] >> (u + 1) << (u + 1))
        ]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adjacency) // 2

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        """Return G + extra."""
        rows = list(self.adjacency)
        for u, v in extra:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))


@dataclass(frozen=True)
class WeightedGraph:
    """A graph with one integer weight per vertex."""

    graph: Graph
    weights: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.weights and self.graph.n:
            object.__setattr__(self, "weights", (1,) * self.graph.n)
        if len(self.weights) != self.graph.n:
            raise ValueError(
                f"{len(self.weights)} weights given for {self.graph.n} vertices"
            )

    @property
    def n(self) -> int:
        return self.graph.n

    def weight_of(self, mask: VertexSet) -> int:
        return sum(self.weights[v] for v in iter_bits(mask))

    def require_non_negative(self) -> None:
        negative = [v for v, w in enumerate(self.weights) if w < 0]
        if negative:
            raise ValueError(
                f"negative weights are not allowed here (vertices {negative[:5]})"
            )


def union_of_neighborhoods(G: Graph, A: VertexSet) -> VertexSet:
    """Union of N(v) over v in A (members of A may appear in the result)."""
    result = EMPTY
    adjacency = G.adjacency
    for v in iter_bits(A):
        result |= adjacency[v]
    return result


def open_neighborhood(G: Graph, A: VertexSet) -> VertexSet:
    """N(A): vertices outside A with a neighbor in A."""
    return union_of_neighborhoods(G, A) & ~A


def closed_neighborhood(G: Graph, v: int) -> VertexSet:
    return G.adjacency[v] | bit(v)


def closed_neighborhood_of_set(G: Graph, A: VertexSet) -> VertexSet:
    return union_of_neighborhoods(G, A) | A


def second_closed_neighborhood(G: Graph, v: int) -> VertexSet:
    """N²[v]: every vertex at distance at most two from v."""
    return closed_neighborhood_of_set(G, closed_neighborhood(G, v))


def connected_components(G: Graph, within: Optional[VertexSet] = None) -> List[VertexSet]:
    """Components of G[within], ordered by smallest member."""
    remaining = G.vertices if within is None else within
    adjacency = G.adjacency
    components = []
    while remaining:
        seed = remaining & -remaining
        component = seed
        frontier = seed
        while frontier:
            reached = EMPTY
            for v in iter_bits(frontier):
                reached |= adjacency[v]
            frontier = reached & remaining & ~component
            component |= frontier
        components.append(component)
        remaining &= ~component
    return components


def component_of(G: Graph, v: int, within: VertexSet) -> VertexSet:
    """The component of G[within] containing v."""
    component = bit(v)
    frontier = component
    while frontier:
        frontier = union_of_neighborhoods(G, frontier) & within & ~component
        component |= frontier
    return component


def is_connected(G: Graph, within: Optional[VertexSet] = None) -> bool:
    within = G.vertices if within is None else within
    if not within:
        return True
    return component_of(G, lowest(within), within) == within


def induced_subgraph(G: Graph, S: VertexSet) -> Tuple[Graph, Dict[int, int]]:
    """G[S] relabelled to 0..|S|-1 in increasing id order, with the old→new map."""
    mapping = {old: new for new, old in enumerate(iter_bits(S))}
    rows = []
    for old in iter_bits(S):
        row = 0
        for u in iter_bits(G.adjacency[old] & S):
            row |= 1 << mapping[u]
        rows.append(row)
    return Graph(len(mapping), tuple(rows)), mapping


def lift(mask: VertexSet, mapping: Dict[int, int]) -> VertexSet:
    """Translate a mask over induced-subgraph ids back to host ids."""
    inverse = {new: old for old, new in mapping.items()}
    return sum(1 << inverse[v] for v in iter_bits(mask))


def pairwise_distance_at_least(G: Graph, S: VertexSet, d: int) -> bool:
    """True iff every two distinct members of S are at distance >= d."""
    if d < 1:
        raise ValueError(f"distance bound must be at least 1, got {d}")
    for u in iter_bits(S):
        others = S & ~bit(u)
        if not others:
            continue
        ball = bit(u)
        for _ in range(d - 1):
            ball = closed_neighborhood_of_set(G, ball)
            if ball & others:
                return False
    return True


def induced_weighted_subgraph(
    Gw: WeightedGraph, S: VertexSet
) -> Tuple[WeightedGraph, Dict[int, int]]:
    graph, mapping = induced_subgraph(Gw.graph, S)
    weights = tuple(Gw.weights[old] for old in sorted(mapping))
    return WeightedGraph(graph, weights), mapping


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges = []
    offset = 0
    for graph in graphs:
        edges.extend((u + offset, v + offset) for u, v in graph.edges())
        offset += graph.n
    return Graph.from_edges(offset, edges)
