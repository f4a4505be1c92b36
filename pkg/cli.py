#!/usr/bin/env python3
"""Command-line interface for the P6-free graph solvers."""

import argparse
import dataclasses
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from p6kit.core.eds_solver import EDSConfig, solve_eds
from p6kit.core.instance_gen import Family, GenSpec, generate
from p6kit.core.mwis_solver import SolverConfig, solve_mwis
from p6kit.core.oracle import (
    OracleLimits,
    eds_bruteforce,
    minimal_separators_bruteforce,
    mwis_bruteforce,
    pmcs_bruteforce,
)
from p6kit.core.structure_verify import (
    Theorem,
    check_counterexamples,
    run_coverage_suite,
    run_hitting_suite,
    run_structure_suite,
)
from p6kit.errors import P6KitError
from p6kit.graph.bitset import members
from p6kit.graph.chordal import central_bag, clique_tree, minimal_triangulation
from p6kit.graph.core import connected_components
from p6kit.graph.patterns import contains_induced, e_graph, find_induced_path
from p6kit.instance_io import ResultRecord, read_instance, write_instance
from p6kit.metrics import SolverMetrics
from p6kit.utils import format_ratio, load_config, setup_logging

logger = logging.getLogger(__name__)


def _external(mask: int) -> List[int]:
    return [v + 1 for v in members(mask)]


def _emit(record: ResultRecord, as_json: bool) -> None:
    print(record.to_json() if as_json else record.to_text())


def _sections(args: argparse.Namespace) -> Dict[str, Dict[str, Any]]:
    return load_config(args.config) if args.config else {}


def cmd_solve_mwis(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    Gw = read_instance(args.file)
    config = SolverConfig.from_mapping(_sections(args).get("mwis", {}))
    if args.mode:
        config = dataclasses.replace(config, strictness=args.mode)
    if args.budget is not None:
        config = dataclasses.replace(config, node_budget=args.budget)
    started = time.perf_counter()
    try:
        solution, stats = solve_mwis(Gw, config)
    except P6KitError as e:
        if metrics:
            metrics.record_mwis(None, time.perf_counter() - started, type(e).__name__)
        raise
    if metrics:
        metrics.record_mwis(stats, time.perf_counter() - started)
    _emit(ResultRecord.from_solution("mwis", Gw, solution, stats.to_dict()), args.json)
    return 0


def cmd_solve_eds(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    Gw = read_instance(args.file)
    config = EDSConfig.from_mapping(_sections(args).get("eds", {}))
    if args.mode:
        config = dataclasses.replace(config, mode=args.mode)
    if args.budget is not None:
        config = dataclasses.replace(config, node_budget=args.budget)
    started = time.perf_counter()
    try:
        solution, stats = solve_eds(Gw, config)
    except P6KitError as e:
        if metrics:
            metrics.record_eds(None, time.perf_counter() - started, type(e).__name__)
        raise
    status = "optimal" if solution is not None else "no-solution"
    if metrics:
        metrics.record_eds(stats, time.perf_counter() - started, status)
    _emit(ResultRecord.from_solution("eds", Gw, solution, stats.to_dict()), args.json)
    return 0


def cmd_check(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    Gw = read_instance(args.file)
    if args.pattern == "E":
        found = contains_induced(Gw.graph, e_graph())
        print("E-free" if not found else "contains an induced E")
        return 1 if found else 0
    witness = find_induced_path(Gw.graph, args.forbid)
    if witness is None:
        print(f"P{args.forbid}-free")
        return 0
    image = [v + 1 for v in witness.vertices]
    print(f"induced P{args.forbid}: {' '.join(map(str, image))}")
    return 1


def cmd_triangulate(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    G = read_instance(args.file).graph
    for component in connected_components(G):
        fill = minimal_triangulation(G, component)
        tree = clique_tree(G, fill, component)
        center = central_bag(G, tree, component)
        report = {
            "component": _external(component),
            "fill": sorted([u + 1, v + 1] for u, v in fill),
            "bags": [_external(bag) for bag in tree.bags],
            "tree_edges": [list(edge) for edge in tree.tree_edges],
            "central_bag": center,
        }
        if args.json:
            print(json.dumps(report, separators=(",", ":")))
        else:
            print(f"component: {' '.join(map(str, report['component']))}")
            print(f"  fill edges: {len(fill)}")
            for u, v in report["fill"]:
                print(f"    {u} {v}")
            for index, bag in enumerate(report["bags"]):
                marker = "*" if index == center else " "
                print(f"  {marker}bag {index}: {' '.join(map(str, bag))}")
    return 0


def cmd_gen(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    spec = GenSpec(
        family=Family(args.family),
        n=args.n,
        k=args.k,
        edge_probability=args.p,
        forbidden_k=args.forbid,
        seed=args.seed,
        weight_range=(args.weights[0], args.weights[1]),
        max_repair=args.max_repair,
        connected=not args.allow_disconnected,
        apex=args.apex,
    )
    Gw = generate(spec)
    comment = f"family={spec.family.value} n={spec.n} k={spec.k} seed={spec.seed}"
    write_instance(args.output, Gw, comment)
    logger.info(f"Wrote {Gw.n}-vertex {spec.family.value} instance to {args.output}")
    return 0


def cmd_verify(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    if args.theorem == "counterexamples":
        report = check_counterexamples(
            args.k_nuke, args.k_sep, pattern_max_n=args.pattern_max_n, raise_on_failure=False
        )
        if args.json:
            print(json.dumps(report.to_dict(), separators=(",", ":")))
        else:
            print(f"tau = {report.tau}")
            for claim in report.claims:
                print(f"{claim.claim}: {claim.status} {claim.detail}".rstrip())
        for claim in report.failed:
            if metrics:
                metrics.record_claim_failure(claim.claim)
        return 4 if report.failed else 0

    forbid = 7 if args.theorem in ("hit-sep", "hit-pmc") else 6
    graphs = [
        generate(GenSpec(
            family=Family(args.family), n=args.n, edge_probability=args.p,
            forbidden_k=forbid, seed=args.seed + i,
        )).graph
        for i in range(args.instances)
    ]
    if args.theorem in ("coverage", "structure"):
        suite = run_coverage_suite if args.theorem == "coverage" else run_structure_suite
        law = suite(graphs)
        if args.json:
            print(json.dumps(law.to_dict(), separators=(",", ":")))
        else:
            print(f"{law.law}: {law.instances} instances, {law.checks} checks, "
                  f"{law.violations} violations")
        return 4 if law.violations else 0

    summary = run_hitting_suite(graphs, Theorem(args.theorem), args.measure)
    if args.json:
        print(json.dumps(summary.to_dict(), separators=(",", ":")))
    else:
        print(f"{summary.theorem.value} bound {format_ratio(summary.theorem.bound)} ({summary.measure_kind})")
        print(f"instances: {summary.instances}")
        print(f"targets checked: {summary.targets_checked}")
        print(f"violations: {summary.violations}")
        print(f"min best mass: {format_ratio(summary.min_best_mass)}")
    if not summary.targets_checked:
        logger.warning("No targets met; try --family clique-star --n 20 for nukes")
        return 1
    return 4 if summary.violations else 0


def cmd_oracle(args: argparse.Namespace, metrics: Optional[SolverMetrics]) -> int:
    Gw = read_instance(args.file)
    limits = OracleLimits(**_sections(args).get("oracle", {}))
    if args.problem == "mwis":
        _emit(ResultRecord.from_solution("mwis", Gw, mwis_bruteforce(Gw, limits)), args.json)
    elif args.problem == "eds":
        result = eds_bruteforce(Gw, limits)
        stats = {} if result is None else {"cardinality": result.cardinality, "count": result.count}
        best = None if result is None else result.best
        _emit(ResultRecord.from_solution("eds", Gw, best, stats), args.json)
    else:
        find = minimal_separators_bruteforce if args.problem == "seps" else pmcs_bruteforce
        sets = [_external(mask) for mask in find(Gw.graph, limits)]
        if args.json:
            print(json.dumps({args.problem: sets}, separators=(",", ":")))
        else:
            for found in sets:
                print(" ".join(map(str, found)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact solvers and structural checks for P6-free graphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python cli.py gen --family random-pkfree --n 30 --p 0.2 --seed 7 -o g.txt
  python cli.py solve-mwis g.txt --json
  python cli.py solve-eds g.txt --mode fallback
  python cli.py check g.txt --forbid 6
  python cli.py verify --theorem hit-sep --instances 50 --n 12
  python cli.py verify --theorem hit-nuke --family clique-star --n 24
  python cli.py verify --theorem coverage --instances 100 --n 14
  python cli.py verify --theorem counterexamples --k-nuke 4 --k-sep 3

Exit codes: 2 parse error, 3 budget or size limit, 4 structure or claim
violation, 5 generation failure, 130 interrupted.
        """
    )
    parser.add_argument("--config", help="YAML file with mwis/eds/oracle sections")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
        help="Logging level (default: WARNING)"
    )
    parser.add_argument("--log-file", help="File to write logs to (default: stdout only)")
    parser.add_argument(
        "--metrics",
        action="store_true",
        help="Display Prometheus metrics after the command"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mwis = sub.add_parser("solve-mwis", help="maximum weight independent set")
    mwis.add_argument("file")
    mwis.add_argument("--mode", choices=["robust", "strict"])
    mwis.add_argument("--budget", type=int, help="branching node budget")
    mwis.add_argument("--json", action="store_true")
    mwis.set_defaults(handler=cmd_solve_mwis)

    eds = sub.add_parser("solve-eds", help="maximum weight efficient dominating set")
    eds.add_argument("file")
    eds.add_argument("--mode", choices=["strict", "fallback"])
    eds.add_argument("--budget", type=int, help="branching node budget")
    eds.add_argument("--json", action="store_true")
    eds.set_defaults(handler=cmd_solve_eds)

    check = sub.add_parser("check", help="induced path / E-graph detection")
    check.add_argument("file")
    check.add_argument("--forbid", type=int, default=6, help="path length k (default: 6)")
    check.add_argument("--pattern", choices=["path", "E"], default="path")
    check.set_defaults(handler=cmd_check)

    tri = sub.add_parser("triangulate", help="minimal triangulation and clique tree")
    tri.add_argument("file")
    tri.add_argument("--json", action="store_true")
    tri.set_defaults(handler=cmd_triangulate)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--family", choices=[f.value for f in Family], default="random-pkfree")
    gen.add_argument("--n", type=int, default=16)
    gen.add_argument("--k", type=int, default=4, help="counterexample parameter")
    gen.add_argument("--p", type=float, default=0.3, help="edge probability")
    gen.add_argument("--forbid", type=int, default=6, help="forbidden path length")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--weights", type=int, nargs=2, default=[1, 1], metavar=("LOW", "HIGH"))
    gen.add_argument("--max-repair", type=int)
    gen.add_argument("--allow-disconnected", action="store_true")
    gen.add_argument("--apex", action="store_true")
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(handler=cmd_gen)

    verify = sub.add_parser("verify", help="hitting-bound suites and counterexample claims")
    verify.add_argument(
        "--theorem",
        required=True,
        choices=[t.value for t in Theorem] + ["coverage", "structure", "counterexamples"],
    )
    verify.add_argument("--family", choices=[f.value for f in Family], default="random-pkfree")
    verify.add_argument("--instances", type=int, default=20)
    verify.add_argument("--n", type=int, default=12)
    verify.add_argument("--p", type=float, default=0.3)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--measure", choices=["uniform", "adversarial"], default="uniform")
    verify.add_argument("--k-nuke", type=int, default=4)
    verify.add_argument("--k-sep", type=int, default=3)
    verify.add_argument("--pattern-max-n", type=int, default=60)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=cmd_verify)

    oracle = sub.add_parser("oracle", help="brute-force reference answers")
    oracle.add_argument("problem", choices=["mwis", "eds", "seps", "pmcs"])
    oracle.add_argument("file")
    oracle.add_argument("--json", action="store_true")
    oracle.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level, log_file=args.log_file)
    metrics = SolverMetrics() if args.metrics else None
    try:
        code = args.handler(args, metrics)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    except P6KitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Command failed with error: {e}", exc_info=True)
        return 1
    if metrics:
        print("\nPrometheus Metrics:")
        print("=" * 60)
        print(metrics.get_metrics())
    return code


if __name__ == "__main__":
    sys.exit(main())
