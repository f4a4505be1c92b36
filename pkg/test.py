#!/usr/bin/env python3
"""
Smoke suite for p6kit.
Runs directly (python test.py) or under pytest.
"""

import sys
from fractions import Fraction


def test_graph_and_patterns():
    """Bitset graphs and induced path detection."""
    from p6kit.graph.core import Graph, path_graph
    from p6kit.graph.patterns import find_induced_path

    print("Testing graph core and pattern search...")
    p6 = path_graph(6)
    witness = find_induced_path(p6, 6)
    assert witness is not None and witness.is_valid_in(p6)
    assert find_induced_path(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 4) is None
    print("✅ Graph and pattern test passed")
    print(f"   P6 witness: {list(witness.vertices)}")


def test_triangulation():
    """Minimal triangulation of C5 and its clique tree."""
    from p6kit.graph.chordal import clique_tree, is_pmc, minimal_triangulation
    from p6kit.graph.core import cycle_graph

    print("\nTesting minimal triangulation...")
    c5 = cycle_graph(5)
    fill = minimal_triangulation(c5)
    tree = clique_tree(c5, fill)
    assert len(fill) == 2
    assert len(tree.bags) == 3 and tree.is_coherent()
    assert all(is_pmc(c5, bag) for bag in tree.bags)
    print("✅ Triangulation test passed")
    print(f"   Fill edges: {sorted(fill)}")


def test_mwis_solver():
    """MWIS on a weighted P4 against the oracle."""
    from p6kit.core.mwis_solver import solve_mwis
    from p6kit.core.oracle import mwis_bruteforce
    from p6kit.graph.core import WeightedGraph, path_graph

    print("\nTesting MWIS solver...")
    Gw = WeightedGraph(path_graph(4), (1, 3, 3, 1))
    solution, stats = solve_mwis(Gw)
    assert solution.weight == 4 == mwis_bruteforce(Gw).weight
    print("✅ MWIS solver test passed")
    print(f"   Weight: {solution.weight}, nodes: {stats.total_nodes}")


def test_eds_solver():
    """EDS on P4 and the absent case on C4."""
    from p6kit.core.eds_solver import solve_eds
    from p6kit.graph.core import WeightedGraph, cycle_graph, path_graph

    print("\nTesting EDS solver...")
    found, stats = solve_eds(WeightedGraph(path_graph(4), (5, 1, 1, 5)))
    assert found is not None and found.weight == 10 and found.vertices == [0, 3]
    missing, _ = solve_eds(WeightedGraph(cycle_graph(4)))
    assert missing is None
    print("✅ EDS solver test passed")
    print(f"   Weight: {found.weight}, max states per bag: {stats.max_state_count}")


def test_counterexamples():
    """Claims about the two counterexample families."""
    from p6kit.core.structure_verify import check_counterexamples

    print("\nTesting counterexample claims...")
    report = check_counterexamples(4, 3)
    statuses = {c.claim: c.status for c in report.claims}
    assert statuses["nuke"] == "skipped"
    assert statuses["p6-present"] == "verified"
    assert statuses["p7-free"] == "verified" and statuses["p8-free"] == "verified"
    print("✅ Counterexample test passed")
    print(f"   tau = {report.tau}, claims: {len(report.claims)}")


def test_solver_metrics():
    """Prometheus exposition after one recorded solve."""
    from p6kit.core.mwis_solver import solve_mwis
    from p6kit.graph.core import WeightedGraph, path_graph
    from p6kit.metrics import SolverMetrics

    print("\nTesting solver metrics...")
    metrics = SolverMetrics()
    _, stats = solve_mwis(WeightedGraph(path_graph(5)))
    metrics.record_mwis(stats, 0.01)
    output = metrics.get_metrics()
    assert "p6kit_solves_total" in output
    assert metrics.get_current_stats()["total_solves"] == 1
    print("✅ Solver metrics test passed")
    print(f"   Metrics output length: {len(output)} characters")


def test_corpus_runner():
    """A tiny corpus checked against the oracles."""
    from p6kit.core.corpus_runner import CorpusConfig, CorpusRunner, growth_table

    print("\nTesting corpus runner...")
    runner = CorpusRunner()
    results = runner.run(CorpusConfig(sizes=[6, 8], instances_per_size=2, weight_range=(-5, 9),
                                      problems=["eds"]))
    assert results.mismatches == 0 and results.failed_runs == 0
    table = growth_table(results)
    assert list(table["n"]) == sorted(table["n"])
    print("✅ Corpus runner test passed")
    print(f"   Runs: {results.total_runs}, nuke eta default {Fraction(1, 10)}")


def main():
    """Run all tests."""
    print("🧪 Running p6kit smoke suite")
    print("=" * 50)

    tests = [
        test_graph_and_patterns,
        test_triangulation,
        test_mwis_solver,
        test_eds_solver,
        test_counterexamples,
        test_solver_metrics,
        test_corpus_runner,
    ]

    passed = 0
    total = len(tests)

    for test in tests:
        try:
            test()
            passed += 1
        except Exception as e:
            print(f"❌ {test.__name__} failed: {e!r}")

    print("\n" + "=" * 50)
    print(f"Test Results: {passed}/{total} tests passed")

    if passed == total:
        print("🎉 All tests passed!")
        return 0
    else:
        print("⚠️  Some tests failed. Check the output above for details.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
