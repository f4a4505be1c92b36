"""Tests for bitset graphs, neighborhoods and components."""

import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from p6kit.graph.bitset import bit, iter_bits, mask_of, members, popcount
from p6kit.graph.core import (
    Graph,
    WeightedGraph,
    closed_neighborhood_of_set,
    connected_components,
    disjoint_union,
    induced_subgraph,
    induced_weighted_subgraph,
    is_connected,
    lift,
    open_neighborhood,
    pairwise_distance_at_least,
    path_graph,
    second_closed_neighborhood,
    star_graph,
)


def test_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError, match="symmetric"):
        Graph(2, (0b10, 0))


def test_rejects_self_loop_and_out_of_range():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_edges_are_sorted_pairs():
    G = Graph.from_edges(4, [(3, 1), (0, 2), (1, 0)])
    assert G.edges() == [(0, 1), (0, 2), (1, 3)]
    assert G.edge_count == 3
    assert G.degree(0) == 2 and G.has_edge(3, 1)


def test_from_networkx_relabels_in_sorted_order():
    nx_graph = nx.Graph([("c", "a"), ("a", "b")])
    G, index = Graph.from_networkx(nx_graph)
    assert index == {"a": 0, "b": 1, "c": 2}
    assert G.edges() == [(0, 1), (0, 2)]
    assert sorted(G.to_networkx().edges()) == [(0, 1), (0, 2)]


def test_neighborhoods_on_a_path():
    G = path_graph(5)
    assert members(open_neighborhood(G, mask_of([1, 2]))) == [0, 3]
    assert members(closed_neighborhood_of_set(G, bit(4))) == [3, 4]
    assert members(second_closed_neighborhood(G, 0)) == [0, 1, 2]


def test_components_are_ordered_by_smallest_member():
    G = disjoint_union([path_graph(2), star_graph(2), path_graph(1)])
    assert [members(c) for c in connected_components(G)] == [[0, 1], [2, 3, 4], [5]]
    assert [members(c) for c in connected_components(G, mask_of([0, 3, 4]))] == [[0], [3], [4]]


@given(graphs(max_n=12))
def test_components_match_networkx(G):
    ours = sorted(members(c) for c in connected_components(G))
    theirs = sorted(sorted(c) for c in nx.connected_components(G.to_networkx()))
    assert ours == theirs
    assert is_connected(G) == (len(ours) <= 1)


def test_induced_subgraph_and_lift():
    G = path_graph(5)
    H, mapping = induced_subgraph(G, mask_of([0, 2, 3]))
    assert mapping == {0: 0, 2: 1, 3: 2}
    assert H.edges() == [(1, 2)]
    assert lift(mask_of([0, 2]), mapping) == mask_of([0, 3])


def test_pairwise_distance():
    G = path_graph(6)
    assert pairwise_distance_at_least(G, mask_of([0, 3]), 3)
    assert not pairwise_distance_at_least(G, mask_of([0, 2]), 3)
    assert pairwise_distance_at_least(G, bit(4), 3)
    with pytest.raises(ValueError):
        pairwise_distance_at_least(G, bit(0), 0)


def test_weighted_graph_defaults_and_checks():
    Gw = WeightedGraph(path_graph(3))
    assert Gw.weights == (1, 1, 1)
    assert Gw.weight_of(mask_of([0, 2])) == 2
    with pytest.raises(ValueError):
        WeightedGraph(path_graph(3), (1, 2))
    with pytest.raises(ValueError, match="negative"):
        WeightedGraph(path_graph(2), (3, -1)).require_non_negative()


def test_induced_weighted_subgraph_keeps_weights():
    Gw = WeightedGraph(path_graph(4), (5, 6, 7, 8))
    local, mapping = induced_weighted_subgraph(Gw, mask_of([1, 3]))
    assert local.weights == (6, 8)
    assert local.graph.edge_count == 0
    assert sorted(mapping) == [1, 3]


@given(graphs(max_n=10))
def test_bit_helpers_agree(G):
    mask = G.vertices
    assert popcount(mask) == G.n == len(list(iter_bits(mask)))
