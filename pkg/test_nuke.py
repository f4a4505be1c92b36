"""Tests for nuke recognition, minimization and measures."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from p6kit.graph.bitset import bit, mask_of, members
from p6kit.graph.core import connected_components, path_graph
from p6kit.graph.nuke import (
    Measure,
    NukeParams,
    best_hitting_vertex,
    is_minimal_nuke,
    is_nuke,
    minimize_nuke,
)

TENTH = Fraction(1, 10)


def test_params_validation():
    assert NukeParams("1/10", 5).eta == TENTH
    with pytest.raises(ValueError):
        NukeParams(Fraction(1, 5), 5)
    with pytest.raises(ValueError):
        NukeParams(TENTH, -1)


def test_window():
    params = NukeParams(TENTH, 16)
    assert params.window_holds(20)
    assert not params.window_holds(11)
    assert not params.window_holds(21)


def test_cut_vertex_is_a_minimal_nuke(two_k5_bridge):
    params = NukeParams(TENTH, 9)
    assert is_nuke(two_k5_bridge, bit(10), params)
    assert is_minimal_nuke(two_k5_bridge, bit(10), params)
    assert not is_nuke(two_k5_bridge, 0, params)
    # two vertices exceed eta * n = 1.1
    assert not is_nuke(two_k5_bridge, mask_of([4, 10]), params)


def test_minimize_nuke_on_a_path():
    G = path_graph(20)
    params = NukeParams(TENTH, 16)
    assert is_nuke(G, mask_of([8, 9]), params)
    assert members(minimize_nuke(G, mask_of([8, 9]), params)) == [9]


def test_nuke_within_a_scope():
    G = path_graph(20)
    params = NukeParams(TENTH, 16)
    # restricted to 12 vertices the window no longer admits tau = 16
    assert not is_nuke(G, bit(5), params, within=mask_of(range(12)))


def test_best_hitting_vertex():
    G = path_graph(20)
    assert best_hitting_vertex(G, bit(9)) == (8, 1)
    assert best_hitting_vertex(G, mask_of([3, 5])) == (4, 2)
    with pytest.raises(ValueError):
        best_hitting_vertex(G, 0)


def test_measures():
    mu = Measure.uniform(mask_of([1, 2, 3, 4]))
    assert mu.of(mask_of([1, 2])) == Fraction(1, 2)
    assert mu.support == mask_of([1, 2, 3, 4])
    assert Measure.point(7).of(bit(7)) == 1
    with pytest.raises(ValueError):
        Measure({0: Fraction(1, 3)})
    with pytest.raises(ValueError):
        Measure({0: Fraction(3, 2), 1: Fraction(-1, 2)})
    with pytest.raises(ValueError):
        Measure.uniform(0)


@given(graphs(min_n=1, max_n=10), st.data())
def test_shrinking_x_never_splits_components(G, data):
    X = data.draw(st.integers(min_value=1, max_value=G.vertices))
    v = data.draw(st.sampled_from(members(X)))
    smaller = X & ~bit(v)
    coarser = connected_components(G, G.vertices & ~smaller)
    for component in connected_components(G, G.vertices & ~X):
        assert any(component & ~outer == 0 for outer in coarser)
