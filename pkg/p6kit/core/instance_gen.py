"""Instance generators: random P_k-free graphs, cographs, counterexample
families and weight assignment."""

import logging
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import networkx as nx

from ..errors import GenerationFailed
from ..graph.bitset import VertexSet, bit, mask_of, members
from ..graph.core import Graph, WeightedGraph, connected_components, induced_subgraph
from ..graph.patterns import find_induced_path, find_induced_path_through

logger = logging.getLogger(__name__)

NUKE_ETA = Fraction(1, 10)


class Family(Enum):
    """Instance families."""
    RANDOM_PKFREE = "random-pkfree"
    COGRAPH = "cograph"
    CLIQUE_STAR = "clique-star"
    NUKE_COUNTEREXAMPLE = "nuke-counterexample"
    SEPARATOR_COUNTEREXAMPLE = "separator-counterexample"


@dataclass
class GenSpec:
    """Everything needed to reproduce one generated instance."""
    family: Family = Family.RANDOM_PKFREE
    n: int = 16
    k: int = 4
    edge_probability: float = 0.3
    forbidden_k: int = 6
    seed: int = 0
    weight_range: Tuple[int, int] = (1, 1)
    max_repair: Optional[int] = None
    connected: bool = True
    apex: bool = False
    exact_size: bool = True

    def __post_init__(self) -> None:
        if isinstance(self.family, str):
            self.family = Family(self.family)
        low, high = self.weight_range
        if low > high:
            raise ValueError(f"empty weight range [{low}, {high}]")
        if self.sized and self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.family is Family.RANDOM_PKFREE:
            if self.forbidden_k < 4:
                raise ValueError(f"forbidden_k must be at least 4, got {self.forbidden_k}")
            if not 0 < self.edge_probability < 1:
                raise ValueError(
                    f"edge probability must lie in (0, 1), got {self.edge_probability}"
                )
        if self.family in (Family.NUKE_COUNTEREXAMPLE, Family.SEPARATOR_COUNTEREXAMPLE):
            if self.k < 2:
                raise ValueError(f"k must be at least 2, got {self.k}")

    @property
    def sized(self) -> bool:
        """Whether ``n`` determines the vertex count of the instance."""
        return self.family in (Family.RANDOM_PKFREE, Family.COGRAPH, Family.CLIQUE_STAR)


def gen_random_pkfree(
    n: int,
    p: float,
    k: int,
    seed: int,
    max_repair: Optional[int] = None,
    connected: bool = False,
) -> Graph:
    """Sample G(n, p) and delete the median vertex of induced P_k witnesses
    until none is left.

    Raises:
        GenerationFailed: if more than ``max_repair`` deletions are needed.
    """
    if k < 4:
        raise ValueError(f"k must be at least 4, got {k}")
    if not 0 < p < 1:
        raise ValueError(f"edge probability must lie in (0, 1), got {p}")
    max_repair = n if max_repair is None else max_repair
    graph, _ = Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))
    repairs = 0
    while True:
        witness = find_induced_path(graph, k)
        if witness is None:
            break
        if repairs >= max_repair:
            raise GenerationFailed(
                f"still not P{k}-free after {repairs} deletions (n={n}, p={p}, seed={seed})"
            )
        median = witness.vertices[len(witness.vertices) // 2]
        graph, _ = induced_subgraph(graph, graph.vertices & ~bit(median))
        repairs += 1
    if connected and graph.n:
        largest = max(connected_components(graph), key=lambda c: (c.bit_count(), -c))
        graph, _ = induced_subgraph(graph, largest)
    # re-verify the final graph
    if find_induced_path(graph, k) is not None:
        raise GenerationFailed(f"generated graph contains an induced P{k}")
    logger.debug("Generated P%d-free graph: n=%d after %d repairs", k, graph.n, repairs)
    return graph


def gen_cograph(n: int, seed: int, connected: bool = False) -> Graph:
    """Expand a random cotree with union/join labels into a graph.

    With ``connected`` the root is always a join.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = random.Random(seed)
    edges = []

    def build(first: int, size: int, root: bool) -> None:
        if size == 1:
            return
        left = rng.randint(1, size - 1)
        build(first, left, False)
        build(first + left, size - left, False)
        join = rng.random() < 0.5
        if join or (root and connected):
            edges.extend(
                (u, v)
                for u in range(first, first + left)
                for v in range(first + left, first + size)
            )

    build(0, n, True)
    return Graph.from_edges(n, edges)


def gen_clique_star(n: int, seed: int) -> Graph:
    """A hub (vertex 0) joined to one vertex of each of several cliques.

    Clique sizes are drawn from [3, max(3, (n-1)//4)], the last one taking
    what is left. Every induced path has at most five vertices.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = random.Random(seed)
    cap = max(3, (n - 1) // 4)
    edges = []
    start = 1
    while start < n:
        size = min(n - start, rng.randint(3, cap))
        block = range(start, start + size)
        edges.extend((u, v) for u in block for v in range(u + 1, start + size))
        edges.append((0, start))
        start += size
    return Graph.from_edges(n, edges)


def grow_to_size(
    G: Graph, n: int, k: int, p: float, seed: int, attempts: int = 3
) -> Graph:
    """Append vertices until G has n of them, keeping G P_k-free and connected.

    Each new vertex tries ``attempts`` random neighborhoods (edge
    probability p, never empty) and keeps the first one that closes no
    induced P_k through it; otherwise it becomes a twin of a random vertex.
    Requires k >= 4.
    """
    if k < 4:
        raise ValueError(f"k must be at least 4, got {k}")
    rng = random.Random(seed)
    if G.n == 0:
        G = Graph.from_edges(1, [])
    edges = list(G.edges())
    grown = G.n
    while grown < n:
        accepted = None
        for _ in range(attempts):
            neighbors = [u for u in range(grown) if rng.random() < p]
            if not neighbors:
                neighbors = [rng.randrange(grown)]
            candidate = Graph.from_edges(grown + 1, edges + [(u, grown) for u in neighbors])
            if find_induced_path_through(candidate, grown, k) is None:
                accepted = candidate, neighbors
                break
        if accepted is None:
            # twins never lie on a common induced P_k for k >= 4
            twin = rng.randrange(grown)
            neighbors = members(G.adjacency[twin])
            if grown == 1 or rng.random() < 0.5:
                neighbors.append(twin)
            accepted = Graph.from_edges(grown + 1, edges + [(u, grown) for u in neighbors]), neighbors
        G, neighbors = accepted
        edges.extend((u, grown) for u in neighbors)
        grown += 1
    return G


def suggested_tau(n: int, eta: Fraction = NUKE_ETA) -> int:
    """⌈0.85 n⌉ clamped into the nuke window for ``eta``."""
    low = math.ceil((1 - 2 * eta) * n)
    high = math.floor((1 - eta) * n)
    return min(max(math.ceil(Fraction(17, 20) * n), low), high)


def gen_counterexample_nuke(k: int, apex: bool = False) -> Tuple[Graph, VertexSet, int]:
    """Cliques A, C_1..C_k of size k; the first vertex c_i of C_i is joined to
    a_i in A. Returns (G, X = {c_1..c_k}, suggested τ).

    With ``apex`` a vertex adjacent to every c_i is appended as the last id.
    Layout: a_i = i, C_i occupies k + i*k .. k + i*k + k - 1.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    n = k * (k + 1)
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    X = 0
    for i in range(k):
        start = k + i * k
        edges.extend(
            (u, v) for u in range(start, start + k) for v in range(u + 1, start + k)
        )
        edges.append((i, start))
        X |= bit(start)
    if apex:
        edges.extend((n, c) for c in range(k, n, k))
        n += 1
    return Graph.from_edges(n, edges), X, suggested_tau(k * (k + 1))


def gen_counterexample_separator(k: int) -> Tuple[Graph, VertexSet]:
    """Cliques A, B, S_1..S_k of size k; every vertex of S_i is joined to a_i
    and b_i. Layout: a_i = i, b_i = k + i, S_i occupies 2k + i*k ..."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    n = k * (k + 2)
    edges = []
    for start in (0, k):
        edges.extend((u, v) for u in range(start, start + k) for v in range(u + 1, start + k))
    S = 0
    for i in range(k):
        start = 2 * k + i * k
        block = range(start, start + k)
        edges.extend((u, v) for u in block for v in range(u + 1, start + k))
        for s in block:
            edges.append((i, s))
            edges.append((k + i, s))
        S |= mask_of(block)
    return Graph.from_edges(n, edges), S


def assign_weights(G: Graph, weight_range: Tuple[int, int], seed: int) -> WeightedGraph:
    """Independent uniform integer weights from the closed interval."""
    low, high = weight_range
    if low > high:
        raise ValueError(f"empty weight range [{low}, {high}]")
    rng = random.Random(seed)
    return WeightedGraph(G, tuple(rng.randint(low, high) for _ in range(G.n)))


def generate(spec: GenSpec) -> WeightedGraph:
    """Build the weighted instance described by ``spec``."""
    if spec.family is Family.RANDOM_PKFREE:
        graph = gen_random_pkfree(
            spec.n, spec.edge_probability, spec.forbidden_k, spec.seed,
            spec.max_repair, spec.connected,
        )
        if spec.exact_size and graph.n < spec.n:
            graph = grow_to_size(
                graph, spec.n, spec.forbidden_k, spec.edge_probability, spec.seed
            )
    elif spec.family is Family.COGRAPH:
        graph = gen_cograph(spec.n, spec.seed, connected=spec.connected)
    elif spec.family is Family.CLIQUE_STAR:
        graph = gen_clique_star(spec.n, spec.seed)
    elif spec.family is Family.NUKE_COUNTEREXAMPLE:
        graph, _, _ = gen_counterexample_nuke(spec.k, spec.apex)
    else:
        graph, _ = gen_counterexample_separator(spec.k)
    return assign_weights(graph, spec.weight_range, spec.seed)
