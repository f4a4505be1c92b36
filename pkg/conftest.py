"""Shared fixtures and hypothesis strategies."""

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from p6kit.core.instance_gen import Family, GenSpec, assign_weights, generate
from p6kit.graph.core import Graph, WeightedGraph, cycle_graph, path_graph

settings.register_profile(
    "p6kit",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("p6kit")


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 0, max_n: int = 10) -> Graph:
    """Arbitrary simple graphs."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def pkfree_graphs(draw: st.DrawFn, k: int = 6, min_n: int = 1, max_n: int = 14) -> Graph:
    """Connected P_k-free graphs on exactly n vertices: repaired G(n, p)
    grown back to size."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    p = draw(st.sampled_from([0.15, 0.25, 0.4, 0.6]))
    seed = draw(st.integers(min_value=0, max_value=10**6))
    return generate(GenSpec(n=n, edge_probability=p, forbidden_k=k, seed=seed)).graph


@st.composite
def clique_stars(draw: st.DrawFn, min_n: int = 20, max_n: int = 32) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    seed = draw(st.integers(min_value=0, max_value=10**6))
    return generate(GenSpec(family=Family.CLIQUE_STAR, n=n, seed=seed)).graph


@st.composite
def weighted(draw: st.DrawFn, base: st.SearchStrategy, low: int = 0, high: int = 100) -> WeightedGraph:
    G = draw(base)
    seed = draw(st.integers(min_value=0, max_value=10**6))
    return assign_weights(G, (low, high), seed)


@pytest.fixture
def p4() -> Graph:
    return path_graph(4)


@pytest.fixture
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture
def two_k5_bridge() -> Graph:
    """Two K5 blocks {0..4} and {5..9} joined through vertex 10."""
    edges = [(u, v) for block in (range(5), range(5, 10)) for u in block for v in block if u < v]
    edges += [(4, 10), (10, 5)]
    return Graph.from_edges(11, edges)
