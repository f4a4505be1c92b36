#!/usr/bin/env python3
"""Growth report and acceptance suites for the P6-free solvers."""

import argparse
import logging
import sys
from fractions import Fraction
from typing import List

from p6kit.core.corpus_runner import CorpusConfig, CorpusResults, CorpusRunner, growth_table
from p6kit.core.eds_solver import EDSConfig
from p6kit.core.instance_gen import Family, GenSpec, generate
from p6kit.core.mwis_solver import SolverConfig
from p6kit.core.structure_verify import (
    Theorem,
    check_counterexamples,
    run_coverage_suite,
    run_hitting_suite,
    run_structure_suite,
)
from p6kit.graph.core import Graph
from p6kit.metrics import SolverMetrics
from p6kit.utils import format_duration, format_ratio, setup_logging


def corpus(
    count: int,
    sizes: List[int],
    seed: int,
    family: Family = Family.RANDOM_PKFREE,
    forbidden_k: int = 6,
    p: float = 0.3,
) -> List[Graph]:
    """``count`` connected graphs cycling through ``sizes``."""
    return [
        generate(GenSpec(
            family=family, n=sizes[i % len(sizes)], edge_probability=p,
            forbidden_k=forbidden_k, seed=seed + i,
        )).graph
        for i in range(count)
    ]


def nuke_corpus(seed: int) -> List[Graph]:
    """P6-free graphs on which the solver reaches the nuke phase."""
    return (
        corpus(40, list(range(20, 41)), seed, Family.CLIQUE_STAR)
        + corpus(10, list(range(14, 19)), seed, p=0.15)
    )


def run_growth(args: argparse.Namespace, runner: CorpusRunner) -> List[CorpusResults]:
    """Node and state counts for each family over the requested sizes."""
    all_results = []
    for family in args.families:
        config = CorpusConfig(
            family=Family(family),
            sizes=args.sizes,
            instances_per_size=args.instances,
            seed=args.seed,
            edge_probability=args.p,
            weight_range=(1, 100),
            problems=args.problems,
            oracle_check=False,
            node_budget=args.budget,
            jobs=args.jobs,
            save_results=not args.no_save,
            output_format=args.output,
            output_dir=args.output_dir,
            run_name=f"growth_{family}",
        )
        results = runner.run(config)
        runner.print_summary(results)
        print(growth_table(results).to_string(index=False))
        all_results.append(results)
    return all_results


def _report(name: str, ok: bool, detail: str) -> bool:
    print(f"{'✅' if ok else '❌'} {name}: {detail}")
    return ok


def run_acceptance(args: argparse.Namespace, runner: CorpusRunner) -> bool:
    """Oracle equivalence at full size, runtime claims and the structural suites."""
    strict_mwis = SolverConfig(assert_small_pmc=True)
    suites = [
        ("mwis-p6free", CorpusConfig(
            sizes=list(range(1, 19)), instances_per_size=28, seed=args.seed,
            weight_range=(0, 100), problems=["mwis"], jobs=args.jobs, mwis=strict_mwis,
        )),
        # forbidden_k above n leaves the random graph unrestricted
        ("mwis-arbitrary", CorpusConfig(
            sizes=list(range(1, 15)), instances_per_size=15, seed=args.seed,
            forbidden_k=20, weight_range=(0, 100), problems=["mwis"], jobs=args.jobs,
        )),
        ("eds-p6free", CorpusConfig(
            sizes=list(range(1, 17)), instances_per_size=32, seed=args.seed,
            weight_range=(-50, 50), problems=["eds"], jobs=args.jobs,
            eds=EDSConfig(assert_shrink=True),
        )),
    ]
    passed = True
    for name, config in suites:
        config.run_name = name
        config.save_results = not args.no_save
        config.output_dir = args.output_dir
        results = runner.run(config)
        runner.print_summary(results)
        checked = results.oracle_checked == results.total_runs > 0
        if name == "mwis-arbitrary":
            ok = checked and results.failed_runs == 0 and results.mismatches == 0
        else:
            ok = checked and results.claims_hold
        passed &= _report(
            name, ok,
            f"{results.oracle_checked}/{results.total_runs} checked, "
            f"{results.mismatches} mismatches, {results.undersized} undersized",
        )

    # the nuke phase only starts below the degree threshold, so lift it
    nuke_phase = CorpusConfig(
        family=Family.CLIQUE_STAR, sizes=list(range(20, 30)), instances_per_size=5,
        seed=args.seed, weight_range=(0, 100), problems=["mwis"], jobs=args.jobs,
        mwis=SolverConfig(degree_factor=Fraction(1, 2)), run_name="mwis-nuke-phase",
        save_results=not args.no_save, output_dir=args.output_dir,
    )
    results = runner.run(nuke_phase)
    runner.print_summary(results)
    ok = (
        results.nuke_seeds > 0
        and results.oracle_checked == results.total_runs
        and results.failed_runs == 0
        and results.mismatches == 0
        and results.below_gamma_events == 0
    )
    passed &= _report(
        "mwis-nuke-phase", ok,
        f"{results.nuke_seeds} nuke seeds, {results.below_gamma_events} below-gamma events",
    )

    p7free = corpus(200, list(range(6, 15)), args.seed, forbidden_k=7)
    for theorem, graphs in (
        (Theorem.HIT_SEP, p7free),
        (Theorem.HIT_PMC, p7free),
        (Theorem.HIT_NUKE, nuke_corpus(args.seed)),
    ):
        for measure in ("uniform", "adversarial"):
            summary = run_hitting_suite(graphs, theorem, measure)
            ok = summary.targets_checked > 0 and summary.violations == 0
            passed &= _report(
                f"{theorem.value} ({measure})", ok,
                f"{summary.targets_checked} targets, "
                f"min mass {format_ratio(summary.min_best_mass)}",
            )

    coverage = run_coverage_suite(corpus(100, list(range(1, 15)), args.seed))
    passed &= _report(
        "coverage", coverage.checks > 0 and coverage.violations == 0,
        f"{coverage.checks} (EDS, bag) pairs, {coverage.violations} violations",
    )
    structure = run_structure_suite(corpus(100, list(range(1, 15)), args.seed, forbidden_k=20))
    passed &= _report(
        "structure", structure.checks > 0 and structure.violations == 0,
        f"{structure.checks} checks, {structure.violations} violations",
    )

    report = check_counterexamples(4, 3, raise_on_failure=False)
    for claim in report.claims:
        print(f"   {claim.claim}: {claim.status} {claim.detail}".rstrip())
    ok = not report.failed and all(c.status == "verified" or c.claim == "nuke" for c in report.claims)
    passed &= _report("counterexamples", ok, f"tau = {report.tau}")
    return passed


def main():
    """Main benchmark function."""
    parser = argparse.ArgumentParser(
        description="Growth report and acceptance suites for p6kit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python benchmark.py
  python benchmark.py --families cograph --sizes 20 40 60 --problems mwis
  python benchmark.py --acceptance --jobs 4
        """
    )
    parser.add_argument(
        "--acceptance",
        action="store_true",
        help="Run the oracle-equivalence and structural suites at full size"
    )
    parser.add_argument(
        "--families",
        nargs="+",
        choices=["random-pkfree", "cograph", "clique-star"],
        default=["cograph", "random-pkfree"],
        help="Instance families for the growth report"
    )
    parser.add_argument(
        "--sizes",
        type=int,
        nargs="+",
        default=[20, 30, 40, 50, 60],
        help="Vertex counts for the growth report (default: 20 30 40 50 60)"
    )
    parser.add_argument("--instances", type=int, default=5, help="Instances per size (default: 5)")
    parser.add_argument("--p", type=float, default=0.2, help="Edge probability (default: 0.2)")
    parser.add_argument(
        "--problems",
        nargs="+",
        choices=["mwis", "eds"],
        default=["mwis", "eds"],
    )
    parser.add_argument("--budget", type=int, default=10**7, help="Node budget (default: 10^7)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1, help="Worker threads (default: 1)")
    parser.add_argument("--output", choices=["json", "csv"], default="json")
    parser.add_argument("--output-dir", default="results")
    parser.add_argument("--no-save", action="store_true", help="Don't save results to file")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="INFO",
        help="Logging level (default: INFO)"
    )
    parser.add_argument("--log-file", help="File to write logs to (default: stdout only)")
    parser.add_argument("--metrics", action="store_true", help="Display Prometheus metrics afterwards")
    args = parser.parse_args()

    setup_logging(level=args.log_level, log_file=args.log_file)
    logger = logging.getLogger(__name__)
    metrics = SolverMetrics() if args.metrics else None
    runner = CorpusRunner(metrics)

    try:
        if args.acceptance:
            passed = run_acceptance(args, runner)
        else:
            results = run_growth(args, runner)
            passed = all(r.failed_runs == 0 and r.undersized == 0 for r in results)
            total = sum(r.total_duration for r in results)
            print(f"\nGrowth report finished in {format_duration(total)}")

        if metrics:
            print("\nPrometheus Metrics:")
            print("=" * 60)
            print(metrics.get_metrics())

        if passed:
            logger.info("Benchmark completed successfully")
            sys.exit(0)
        logger.warning("Benchmark completed with failures")
        sys.exit(1)

    except KeyboardInterrupt:
        logger.info("Benchmark interrupted by user")
        sys.exit(130)
    except Exception as e:
        logger.error(f"Benchmark failed with error: {e}", exc_info=True)
        sys.exit(getattr(e, "exit_code", 1))


if __name__ == "__main__":
    main()
