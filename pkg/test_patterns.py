"""Tests for induced path and pattern detection."""

import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from p6kit.core.oracle import induced_path_bruteforce
from p6kit.errors import PatternBudgetExceeded
from p6kit.graph.core import Graph, complete_graph, cycle_graph, path_graph
from p6kit.graph.patterns import (
    PatternGraph,
    contains_induced,
    e_graph,
    find_induced,
    find_induced_path,
    find_induced_path_through,
    is_pk_free,
    path_pattern,
)


def test_path_contains_itself():
    G = path_graph(6)
    witness = find_induced_path(G, 6)
    assert witness is not None
    assert witness.is_valid_in(G)
    assert len(witness) == 6


def test_cycles():
    assert find_induced_path(cycle_graph(5), 5) is None
    assert find_induced_path(cycle_graph(5), 4) is not None
    assert find_induced_path(cycle_graph(6), 6) is None
    assert find_induced_path(cycle_graph(6), 5) is not None
    witness = find_induced_path(cycle_graph(7), 6)
    assert witness is not None and witness.is_valid_in(cycle_graph(7))


def test_trivial_lengths():
    assert find_induced_path(complete_graph(4), 1) is not None
    assert find_induced_path(complete_graph(4), 3) is None
    assert is_pk_free(path_graph(3), 4)


def test_budget_is_enforced():
    with pytest.raises(PatternBudgetExceeded):
        find_induced_path(path_graph(12), 12, budget=3)


@given(graphs(max_n=9))
def test_agrees_with_bruteforce(G):
    for k in (3, 4, 5, 6):
        found = find_induced_path(G, k)
        assert (found is not None) == induced_path_bruteforce(G, k)
        if found is not None:
            assert found.is_valid_in(G)


def test_e_graph_detection():
    E = e_graph()
    assert contains_induced(E.graph, E)
    # a P6 has no vertex of degree three, so no induced E
    assert not contains_induced(path_graph(6), E)
    host = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)])
    image = find_induced(host, E)
    assert image is not None and image[2] == 2


def test_pattern_size_limit():
    with pytest.raises(ValueError):
        PatternGraph("big", path_graph(9))
    assert path_pattern(4).graph.edge_count == 3


@given(graphs(max_n=9))
def test_witness_prefixes_are_induced_paths(G):
    for k in range(2, 7):
        found = find_induced_path(G, k)
        if found is None:
            continue
        for j in range(1, k + 1):
            assert find_induced_path(G, j) is not None
            prefix = type(found)(found.vertices[:j])
            assert prefix.is_valid_in(G)


@given(graphs(max_n=10), st.integers(min_value=3, max_value=6))
def test_path_pattern_matches_pk_freeness(G, k):
    assert contains_induced(G, path_pattern(k)) == (not is_pk_free(G, k))


def _path_through_exists(G, v, k):
    nx_graph = G.to_networkx()
    others = [u for u in range(G.n) if u != v]
    for rest in itertools.combinations(others, k - 1):
        sub = nx_graph.subgraph((v,) + rest)
        if (
            sub.number_of_edges() == k - 1
            and nx.is_connected(sub)
            and max((d for _, d in sub.degree()), default=0) <= 2
        ):
            return True
    return False


@given(graphs(min_n=1, max_n=9), st.integers(min_value=1, max_value=6), st.data())
def test_path_through_a_vertex_matches_subset_scan(G, k, data):
    v = data.draw(st.integers(min_value=0, max_value=G.n - 1))
    found = find_induced_path_through(G, v, k)
    assert (found is not None) == _path_through_exists(G, v, k)
    if found is not None:
        assert v in found.vertices and len(found) == k
        assert found.is_valid_in(G)


def test_path_through_the_middle():
    G = path_graph(7)
    found = find_induced_path_through(G, 3, 7)
    assert found is not None and list(found.vertices) == list(range(7))
    assert find_induced_path_through(cycle_graph(6), 0, 6) is None
