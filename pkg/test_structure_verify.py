"""Tests for the hitting-bound checks and the counterexample claims."""

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import graphs, pkfree_graphs
from p6kit.core.instance_gen import Family, GenSpec, gen_counterexample_separator, generate
from p6kit.core.structure_verify import (
    ALPHA,
    BETA,
    GAMMA,
    Theorem,
    adversarial_measure,
    check_counterexamples,
    run_coverage_suite,
    run_hitting_suite,
    run_structure_suite,
    verify_hit_nuke,
    verify_hit_pmc,
    verify_hit_sep,
)
from p6kit.errors import PreconditionViolation
from p6kit.graph.bitset import bit, mask_of
from p6kit.graph.core import Graph, complete_graph, cycle_graph, path_graph, star_graph
from p6kit.graph.nuke import Measure, NukeParams


def test_theorem_bounds():
    assert Theorem.HIT_SEP.bound == ALPHA == Fraction(1, 24)
    assert Theorem.HIT_PMC.bound == BETA == Fraction(1, 576)
    assert Theorem.HIT_NUKE.bound == GAMMA == Fraction(1, 5760)


def test_separator_examples():
    report = verify_hit_sep(path_graph(3), bit(1))
    assert report.best_vertex == 0 and report.best_mass == 1 and report.satisfied
    assert verify_hit_sep(cycle_graph(4), mask_of([0, 2])).best_mass == 1


def test_separator_counterexample_reaches_one_over_k():
    G, S = gen_counterexample_separator(3)
    report = verify_hit_sep(G, S)
    assert report.best_mass == Fraction(1, 3)
    assert report.target_set_size == 9


def test_pmc_examples():
    report = verify_hit_pmc(path_graph(4), mask_of([1, 2]))
    assert report.best_mass == Fraction(1, 2) and report.best_vertex == 0
    K5 = complete_graph(5)
    assert verify_hit_pmc(K5, K5.vertices).best_mass == Fraction(4, 5)


def test_preconditions():
    with pytest.raises(PreconditionViolation):
        verify_hit_sep(path_graph(4), bit(0))
    with pytest.raises(PreconditionViolation):
        verify_hit_pmc(path_graph(4), mask_of([0, 2]))
    with pytest.raises(PreconditionViolation):
        verify_hit_pmc(Graph.from_edges(3, [(0, 1)]), mask_of([0, 1]))
    with pytest.raises(PreconditionViolation):
        verify_hit_sep(path_graph(3), bit(1), Measure.point(0))


def test_cut_vertex_nuke(two_k5_bridge):
    params = NukeParams(Fraction(1, 10), 9)
    report = verify_hit_nuke(two_k5_bridge, bit(10), params)
    assert report.best_vertex == 4 and report.best_mass == 1
    with pytest.raises(PreconditionViolation):
        verify_hit_nuke(two_k5_bridge, mask_of([4, 10]), params)


def test_adversarial_measure_prefers_low_degree():
    G = star_graph(3)
    mu = adversarial_measure(G, G.vertices)
    assert mu.mass == {1: Fraction(1, 2), 2: Fraction(1, 2)}
    assert adversarial_measure(G, bit(0)).mass == {0: Fraction(1)}
    with pytest.raises(ValueError):
        adversarial_measure(G, 0)


@given(pkfree_graphs(k=7, max_n=9))
def test_separator_suite_has_no_violations(G):
    for measure in ("uniform", "adversarial"):
        summary = run_hitting_suite([G], Theorem.HIT_SEP, measure)
        assert summary.violations == 0
        assert summary.instances == 1


@given(pkfree_graphs(k=7, min_n=2, max_n=9))
def test_pmc_suite_has_no_violations(G):
    summary = run_hitting_suite([G], Theorem.HIT_PMC, "adversarial")
    assert summary.violations == 0
    if G.n >= 2:
        assert summary.targets_checked >= 1


def test_nuke_suite_sees_the_solver_nukes():
    summary = run_hitting_suite([path_graph(20)], Theorem.HIT_NUKE)
    assert summary.targets_checked >= 1 and summary.violations == 0
    assert summary.to_dict()["theorem"] == "hit-nuke"
    with pytest.raises(ValueError):
        run_hitting_suite([path_graph(4)], Theorem.HIT_SEP, "gaussian")


def test_nuke_suite_on_clique_stars():
    stars = [generate(GenSpec(family=Family.CLIQUE_STAR, n=20 + i, seed=i)).graph for i in range(4)]
    summary = run_hitting_suite(stars, Theorem.HIT_NUKE)
    assert summary.instances == 4
    assert summary.targets_checked >= 4 and summary.violations == 0


def test_nuke_suite_on_a_p6_free_graph_without_nukes_checks_nothing():
    summary = run_hitting_suite([complete_graph(6)], Theorem.HIT_NUKE)
    assert summary.targets_checked == 0


@given(pkfree_graphs(max_n=9))
def test_every_eds_meets_a_consistent_state(G):
    summary = run_coverage_suite([G])
    assert summary.violations == 0, summary.failures
    assert summary.instances == 1


def test_coverage_suite_counts_checks(p4):
    summary = run_coverage_suite([p4, path_graph(7), cycle_graph(4)])
    assert summary.instances == 3 and summary.checks > 0
    assert summary.violations == 0
    assert summary.to_dict()["law"] == "coverage"


@given(graphs(min_n=1, max_n=9))
def test_clique_tree_bags_are_pmcs(G):
    summary = run_structure_suite([G])
    assert summary.violations == 0, summary.failures
    assert summary.checks >= 2

def test_counterexamples_small():
    report = check_counterexamples(4, 3)
    statuses = {c.claim: c.status for c in report.claims}
    assert statuses["nuke"] == "skipped"
    assert statuses["p6-present"] == "verified"
    assert statuses["nuke-adjacency"] == "verified"
    assert statuses["apex-pmc"] == "verified"
    assert statuses["minimal-separator"] == "verified"
    assert statuses["separator-adjacency"] == "verified"
    assert not report.failed
    assert report.to_dict()["k_nuke"] == 4


def test_counterexamples_large_nuke_skips_pattern_search():
    report = check_counterexamples(10, 3)
    claims = {c.claim: c for c in report.claims}
    assert claims["nuke"].status == "verified"
    assert claims["p7-free"].status == "skipped"
    assert claims["p7-free"].detail.startswith("budget:")
    assert report.tau == 94


def test_counterexamples_smallest_k():
    report = check_counterexamples(2, 2, raise_on_failure=False)
    statuses = {c.claim: c.status for c in report.claims}
    assert statuses["separator-adjacency"] == "verified"
    assert statuses["p6-present"] == "verified"
    assert statuses["minimal-separator"] == "verified"
    with pytest.raises(ValueError):
        check_counterexamples(1, 3)
