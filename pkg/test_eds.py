"""Tests for EDS state families and the dynamic program."""

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import pkfree_graphs, weighted
from p6kit.core.eds_solver import EDSConfig, EDSDynamicProgram, EDSMode, EDSStats, solve_eds
from p6kit.core.eds_states import (
    EnumerationStats,
    Marker,
    State,
    enumerate_states,
    state_consistent,
)
from p6kit.core.oracle import eds_bruteforce, enumerate_eds
from p6kit.core.solution import verify_solution
from p6kit.errors import BudgetExceeded, NotP6Free, PreconditionViolation
from p6kit.graph.bitset import mask_of, members
from p6kit.graph.core import (
    WeightedGraph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
)


def test_weighted_p4():
    found, stats = solve_eds(WeightedGraph(path_graph(4), (5, 1, 1, 5)))
    assert found.vertices == [0, 3] and found.weight == 10
    assert stats.components == 1 and stats.max_state_count >= 1


def test_cycle_without_eds():
    found, _ = solve_eds(WeightedGraph(cycle_graph(4)))
    assert found is None


def test_negative_weights_on_a_triangle():
    found, _ = solve_eds(WeightedGraph(complete_graph(3), (-2, -5, 1)))
    assert found.vertices == [2] and found.weight == 1


def test_components_combine():
    G = disjoint_union([path_graph(4), path_graph(1)])
    found, stats = solve_eds(WeightedGraph(G, (5, 1, 1, 5, 2)))
    assert found.vertices == [0, 3, 4] and found.weight == 12
    assert stats.components == 2
    missing, _ = solve_eds(WeightedGraph(disjoint_union([path_graph(2), cycle_graph(4)])))
    assert missing is None


def test_p4_state_matches_its_eds(p4):
    family = enumerate_states(p4, mask_of([1, 2]))
    X = mask_of([0, 3])
    assert any(state_consistent(f, X, p4, family) for f in family.states)
    assert State((0, 1)) in family.states
    with pytest.raises(PreconditionViolation):
        state_consistent(family.states[0], mask_of([0, 2]), p4, family)


def test_clique_states_mark_the_solution_vertex():
    G = complete_graph(3)
    family = enumerate_states(G, G.vertices)
    assert set(family.states) == {
        State((Marker.BOT, Marker.OMEGA, Marker.OMEGA)),
        State((Marker.OMEGA, Marker.BOT, Marker.OMEGA)),
        State((Marker.OMEGA, Marker.OMEGA, Marker.BOT)),
    }
    for f in family.states:
        assert len(members(family.bot_mask(f))) == 1
        assert "BOT" in family.describe(f).values()


def test_enumeration_needs_a_bag(p4):
    with pytest.raises(ValueError):
        enumerate_states(p4, 0)


@given(pkfree_graphs(max_n=10))
def test_every_eds_is_covered_by_each_bag(G):
    program = EDSDynamicProgram(WeightedGraph(G))
    families = program.build_families()
    solutions = [mask_of(X) for X in enumerate_eds(G)]
    for family in families.values():
        for X in solutions:
            assert any(state_consistent(f, X, G, family) for f in family.states)


@given(pkfree_graphs(max_n=10))
def test_eds_restricted_to_a_cone_is_partial(G):
    program = EDSDynamicProgram(WeightedGraph(G))
    for X in enumerate_eds(G):
        X = mask_of(X)
        for t in range(len(program.tree.bags)):
            assert program.is_partial_solution(t, X & program.cone[t])


@given(weighted(pkfree_graphs(max_n=14), low=-50, high=50))
def test_matches_oracle(Gw):
    found, _ = solve_eds(Gw)
    reference = eds_bruteforce(Gw)
    if reference is None:
        assert found is None
        return
    assert found is not None
    assert verify_solution(Gw, found, "eds")
    assert found.weight == reference.best.weight
    assert len(found.vertices) == reference.cardinality


@given(weighted(pkfree_graphs(max_n=14), low=-20, high=20))
def test_shrink_checks_hold_on_p6_free_graphs(Gw):
    found, stats = solve_eds(Gw, EDSConfig(assert_shrink=True))
    reference = eds_bruteforce(Gw)
    assert stats.enumeration.shrink_warnings == 0
    if reference is None:
        assert found is None
    else:
        assert found is not None and found.weight == reference.best.weight


def test_strict_mode_rejects_p6():
    with pytest.raises(NotP6Free):
        solve_eds(WeightedGraph(path_graph(6)))


def test_fallback_mode_uses_the_oracle():
    config = EDSConfig(mode="fallback")
    found, stats = solve_eds(WeightedGraph(path_graph(6)), config)
    assert found.vertices == [1, 4]
    assert stats.fallback_components == 1
    with pytest.raises(NotP6Free):
        solve_eds(WeightedGraph(path_graph(30)), config)


def test_node_budget():
    with pytest.raises(BudgetExceeded):
        solve_eds(WeightedGraph(complete_graph(3)), EDSConfig(node_budget=1))


def test_config_and_stats():
    config = EDSConfig.from_mapping({"beta": "1/100", "mode": "fallback", "fallback_max_n": 10})
    assert config.beta == Fraction(1, 100) and config.mode is EDSMode.FALLBACK
    with pytest.raises(ValueError):
        EDSConfig.from_mapping({"gamma": 1})
    with pytest.raises(ValueError):
        EDSConfig(beta=2)

    stats = EDSStats(EnumerationStats(branching_nodes=4), [2, 7], components=1)
    stats.merge(EDSStats(EnumerationStats(branching_nodes=1, leaves=3), [5], components=1))
    data = stats.to_dict()
    assert data["branching_nodes"] == 5 and data["leaves"] == 3
    assert data["max_state_count"] == 7 and data["components"] == 2
    assert stats.total_nodes == 5
