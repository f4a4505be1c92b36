"""Tests for the instance generators."""

import pytest
from hypothesis import given, strategies as st

from p6kit.core.instance_gen import (
    Family,
    GenSpec,
    assign_weights,
    gen_clique_star,
    gen_cograph,
    gen_counterexample_nuke,
    gen_counterexample_separator,
    gen_random_pkfree,
    generate,
    grow_to_size,
    suggested_tau,
)
from p6kit.errors import GenerationFailed
from p6kit.graph.bitset import members, popcount
from p6kit.graph.core import is_connected, path_graph
from p6kit.graph.nuke import NukeParams
from p6kit.graph.patterns import is_pk_free


@given(
    st.integers(min_value=1, max_value=18),
    st.sampled_from([0.1, 0.3, 0.5]),
    st.integers(min_value=4, max_value=7),
    st.integers(min_value=0, max_value=1000),
)
def test_random_graphs_are_pk_free_and_connected(n, p, k, seed):
    G = gen_random_pkfree(n, p, k, seed, connected=True)
    assert is_pk_free(G, k)
    assert is_connected(G)
    assert 1 <= G.n <= n


def test_random_graphs_are_reproducible():
    assert gen_random_pkfree(15, 0.3, 6, 42) == gen_random_pkfree(15, 0.3, 6, 42)


def test_repair_limit():
    with pytest.raises(GenerationFailed):
        gen_random_pkfree(30, 0.1, 4, seed=1, max_repair=0)
    with pytest.raises(ValueError):
        gen_random_pkfree(10, 0.3, 3, seed=1)


@pytest.mark.parametrize("seed", range(10))
def test_cographs_are_p4_free(seed):
    G = gen_cograph(12, seed)
    assert G.n == 12
    assert is_pk_free(G, 4)


def test_nuke_counterexample_layout():
    G, X, tau = gen_counterexample_nuke(3)
    assert G.n == 12 and members(X) == [3, 6, 9]
    assert tau == 10
    assert G.has_edge(0, 3) and G.has_edge(2, 9)
    H, _, _ = gen_counterexample_nuke(3, apex=True)
    assert H.n == 13 and H.degree(12) == 3


def test_separator_counterexample_layout():
    G, S = gen_counterexample_separator(3)
    assert G.n == 15 and popcount(S) == 9
    for s in members(S):
        i = (s - 6) // 3
        assert G.has_edge(i, s) and G.has_edge(3 + i, s)


@pytest.mark.parametrize("n", [10, 20, 37, 110, 1000])
def test_suggested_tau_lies_in_the_window(n):
    assert NukeParams("1/10", suggested_tau(n)).window_holds(n)


def test_spec_validation():
    assert GenSpec(family="cograph").family is Family.COGRAPH
    with pytest.raises(ValueError):
        GenSpec(weight_range=(3, 1))
    with pytest.raises(ValueError):
        GenSpec(forbidden_k=3)
    with pytest.raises(ValueError):
        GenSpec(family=Family.NUKE_COUNTEREXAMPLE, k=1)


def test_weights():
    Gw = assign_weights(path_graph(50), (-5, 5), seed=3)
    assert all(-5 <= w <= 5 for w in Gw.weights)
    assert Gw == assign_weights(path_graph(50), (-5, 5), seed=3)


def test_generate_dispatch():
    cograph = generate(GenSpec(family=Family.COGRAPH, n=14, seed=4, weight_range=(1, 9)))
    assert is_connected(cograph.graph)
    separator = generate(GenSpec(family=Family.SEPARATOR_COUNTEREXAMPLE, k=2))
    assert separator.n == 8 and set(separator.weights) == {1}


@given(
    st.sampled_from([Family.RANDOM_PKFREE, Family.COGRAPH, Family.CLIQUE_STAR]),
    st.integers(min_value=1, max_value=30),
    st.sampled_from([0.1, 0.3, 0.6]),
    st.integers(min_value=0, max_value=1000),
)
def test_sized_families_reach_the_requested_n(family, n, p, seed):
    spec = GenSpec(family=family, n=n, edge_probability=p, seed=seed)
    G = generate(spec).graph
    assert spec.sized
    assert G.n == n
    assert is_connected(G)
    assert is_pk_free(G, 4 if family is Family.COGRAPH else 6)


@pytest.mark.parametrize("seed", range(5))
def test_sparse_random_graphs_are_grown_back(seed):
    spec = GenSpec(n=60, edge_probability=0.2, seed=seed)
    assert generate(spec).n == 60
    shrunk = generate(GenSpec(n=60, edge_probability=0.2, seed=seed, exact_size=False))
    assert shrunk.n <= 60


def test_growth_keeps_the_seed_graph():
    G = grow_to_size(path_graph(3), 15, k=4, p=0.3, seed=7)
    assert G.n == 15
    assert is_pk_free(G, 4) and is_connected(G)
    assert G.has_edge(0, 1) and G.has_edge(1, 2) and not G.has_edge(0, 2)
    with pytest.raises(ValueError):
        grow_to_size(path_graph(3), 5, k=3, p=0.3, seed=7)


@pytest.mark.parametrize("n", [1, 5, 20, 41])
def test_clique_star_layout(n):
    G = gen_clique_star(n, seed=n)
    assert G.n == n and is_connected(G)
    assert is_pk_free(G, 6)
    assert G.degree(0) < n / 2 or n < 20


@pytest.mark.parametrize("seed", range(10))
def test_connected_cographs(seed):
    G = gen_cograph(12, seed, connected=True)
    assert is_connected(G) and is_pk_free(G, 4)
