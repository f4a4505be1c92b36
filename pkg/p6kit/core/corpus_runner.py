"""Corpus runner: generate instances, solve them, cross-check against the
brute-force oracles and tabulate growth."""

import csv
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from ..graph.core import WeightedGraph
from ..metrics import SolverMetrics
from .eds_solver import EDSConfig, solve_eds
from .instance_gen import Family, GenSpec, generate
from .mwis_solver import SolverConfig, solve_mwis
from .oracle import OracleLimits, eds_bruteforce, mwis_bruteforce

logger = logging.getLogger(__name__)

# runtime-claim counters carried by every per-run record
CLAIM_COUNTERS = {
    "nuke_seeds": 0,
    "below_gamma_events": 0,
    "small_pmc_violations": 0,
    "shrink_warnings": 0,
}


@dataclass
class CorpusConfig:
    """Configuration for one corpus run."""
    family: Family = Family.RANDOM_PKFREE
    sizes: List[int] = field(default_factory=lambda: [8, 12, 16])
    instances_per_size: int = 5
    seed: int = 0
    edge_probability: float = 0.3
    forbidden_k: int = 6
    k: int = 4  # counterexample families only
    weight_range: Tuple[int, int] = (1, 20)
    problems: List[str] = field(default_factory=lambda: ["mwis", "eds"])
    oracle_check: bool = True
    node_budget: Optional[int] = None
    jobs: int = 1
    save_results: bool = False
    output_format: str = "json"  # "json" or "csv"
    output_dir: str = "results"
    run_name: Optional[str] = None
    mwis: SolverConfig = field(default_factory=SolverConfig)
    eds: EDSConfig = field(default_factory=EDSConfig)
    oracle: OracleLimits = field(default_factory=OracleLimits)

    def __post_init__(self) -> None:
        if isinstance(self.family, str):
            self.family = Family(self.family)
        unknown = set(self.problems) - {"mwis", "eds"}
        if unknown:
            raise ValueError(f"unknown problems: {sorted(unknown)}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")
        if self.node_budget is not None:
            self.mwis.node_budget = self.node_budget
            self.eds.node_budget = self.node_budget


@dataclass
class CorpusResults:
    """Results from a corpus run."""
    run_name: str
    start_time: str
    end_time: str
    total_duration: float
    config: CorpusConfig
    total_runs: int
    successful_runs: int
    failed_runs: int
    oracle_checked: int
    mismatches: int
    max_mwis_nodes: int
    max_state_count: int
    errors: Dict[str, int]
    individual_results: List[Dict[str, Any]]
    undersized: int = 0
    nuke_seeds: int = 0
    below_gamma_events: int = 0
    small_pmc_violations: int = 0
    shrink_warnings: int = 0

    @property
    def claims_hold(self) -> bool:
        """No failed run, no oracle mismatch, no runtime-claim event and no
        instance below its requested size."""
        return (
            self.failed_runs == 0
            and self.mismatches == 0
            and self.undersized == 0
            and self.below_gamma_events == 0
            and self.small_pmc_violations == 0
            and self.shrink_warnings == 0
        )


class CorpusRunner:
    """Runs the solvers over a generated corpus."""

    def __init__(self, metrics: Optional[SolverMetrics] = None) -> None:
        self.metrics = metrics
        logger.info("Initialized CorpusRunner")

    def run(self, config: CorpusConfig) -> CorpusResults:
        """Generate, solve and check every instance described by ``config``."""
        specs = self._instance_specs(config)
        logger.info(
            f"Starting corpus run: {len(specs)} instances x {len(config.problems)} problems, "
            f"{config.jobs} workers"
        )
        start_time = datetime.now()
        start_timestamp = time.time()

        if config.jobs > 1:
            results = self._run_concurrent(specs, config)
        else:
            results = []
            for index, spec in enumerate(specs):
                logger.debug(f"Running instance {index + 1}/{len(specs)}")
                results.extend(self._run_instance(index, spec, config))

        end_time = datetime.now()
        corpus_results = self._calculate_summary(
            results, config, start_time, end_time, time.time() - start_timestamp
        )
        if self.metrics is not None:
            self.metrics.record_batch_results(results)
        if config.save_results:
            self._save_results(corpus_results, config)
        logger.info(
            f"Corpus run completed: {corpus_results.successful_runs}/"
            f"{corpus_results.total_runs} successful, {corpus_results.mismatches} mismatches"
        )
        return corpus_results

    def _instance_specs(self, config: CorpusConfig) -> List[GenSpec]:
        specs = []
        index = 0
        for n in config.sizes:
            for _ in range(config.instances_per_size):
                specs.append(GenSpec(
                    family=config.family,
                    n=n,
                    k=config.k,
                    edge_probability=config.edge_probability,
                    forbidden_k=config.forbidden_k,
                    seed=config.seed + index,
                    weight_range=config.weight_range,
                ))
                index += 1
        return specs

    def _run_concurrent(
        self, specs: List[GenSpec], config: CorpusConfig
    ) -> List[Dict[str, Any]]:
        results: List[Dict[str, Any]] = []
        with ThreadPoolExecutor(max_workers=config.jobs) as executor:
            future_to_instance = {
                executor.submit(self._run_instance, index, spec, config): (index, spec)
                for index, spec in enumerate(specs)
            }
            for future in as_completed(future_to_instance):
                index, spec = future_to_instance[future]
                try:
                    results.extend(future.result())
                    logger.debug(f"Completed instance {index}")
                except Exception as e:
                    logger.error(f"Instance {index} failed with exception: {e}")
                    results.append(self._error_record(index, spec, "all", e))
        results.sort(key=lambda r: (r["instance_id"], r["problem"]))
        return results

    def _error_record(
        self, index: int, spec: GenSpec, problem: str, error: BaseException
    ) -> Dict[str, Any]:
        return {
            "instance_id": index,
            "family": spec.family.value,
            "n": spec.n,
            "requested_n": spec.n if spec.sized else None,
            "seed": spec.seed,
            "problem": problem,
            "success": False,
            "status": type(error).__name__,
            "error": str(error),
            "weight": None,
            "oracle_weight": None,
            "match": None,
            "nodes": 0,
            "max_state_count": 0,
            "seconds": 0.0,
            "claim": getattr(error, "claim", None),
            **CLAIM_COUNTERS,
        }

    def _run_instance(
        self, index: int, spec: GenSpec, config: CorpusConfig
    ) -> List[Dict[str, Any]]:
        try:
            Gw = generate(spec)
        except Exception as e:
            logger.error(f"Generation failed for instance {index}: {e}")
            return [self._error_record(index, spec, problem, e) for problem in config.problems]
        if spec.sized and Gw.n < spec.n:
            logger.warning(f"Instance {index} has {Gw.n} vertices, {spec.n} requested")
        records = []
        for problem in config.problems:
            try:
                record = self._solve_one(Gw, problem, config)
            except Exception as e:
                logger.error(f"{problem} failed on instance {index} (n={Gw.n}): {e}")
                record = self._error_record(index, spec, problem, e)
            record.update(
                instance_id=index,
                family=spec.family.value,
                n=Gw.n,
                requested_n=spec.n if spec.sized else None,
                seed=spec.seed,
            )
            records.append(record)
        return records

    def _solve_one(self, Gw: WeightedGraph, problem: str, config: CorpusConfig) -> Dict[str, Any]:
        started = time.perf_counter()
        counters = dict(CLAIM_COUNTERS)
        if problem == "mwis":
            solution, stats = solve_mwis(Gw, config.mwis)
            weight: Optional[int] = solution.weight
            nodes, states = stats.total_nodes, 0
            counters.update(
                nuke_seeds=stats.nuke_seeds,
                below_gamma_events=stats.below_gamma_events,
                small_pmc_violations=stats.small_pmc_violations,
            )
        else:
            found, eds_stats = solve_eds(Gw, config.eds)
            weight = None if found is None else found.weight
            nodes, states = eds_stats.total_nodes, eds_stats.max_state_count
            counters["shrink_warnings"] = eds_stats.enumeration.shrink_warnings
        seconds = time.perf_counter() - started

        oracle_weight: Optional[int] = None
        match: Optional[bool] = None
        if config.oracle_check:
            if problem == "mwis" and Gw.n <= config.oracle.mwis:
                oracle_weight = mwis_bruteforce(Gw, config.oracle).weight
                match = oracle_weight == weight
            elif problem == "eds" and Gw.n <= config.oracle.eds:
                reference = eds_bruteforce(Gw, config.oracle)
                oracle_weight = None if reference is None else reference.best.weight
                match = oracle_weight == weight
        if match is False:
            logger.error(f"{problem} mismatch: solver {weight}, oracle {oracle_weight}")
        return {
            "problem": problem,
            "success": True,
            "status": "optimal" if weight is not None else "no-solution",
            "error": None,
            "weight": weight,
            "oracle_weight": oracle_weight,
            "match": match,
            "nodes": nodes,
            "max_state_count": states,
            "seconds": seconds,
            "claim": None,
            **counters,
        }

    def _calculate_summary(
        self,
        results: List[Dict[str, Any]],
        config: CorpusConfig,
        start_time: datetime,
        end_time: datetime,
        total_duration: float,
    ) -> CorpusResults:
        successful = [r for r in results if r["success"]]
        errors: Dict[str, int] = {}
        for result in results:
            if not result["success"]:
                errors[result["status"]] = errors.get(result["status"], 0) + 1
        run_name = config.run_name or f"corpus_{start_time.strftime('%Y%m%d_%H%M%S')}"
        return CorpusResults(
            run_name=run_name,
            start_time=start_time.isoformat(),
            end_time=end_time.isoformat(),
            total_duration=total_duration,
            config=config,
            total_runs=len(results),
            successful_runs=len(successful),
            failed_runs=len(results) - len(successful),
            oracle_checked=sum(1 for r in successful if r["match"] is not None),
            mismatches=sum(1 for r in successful if r["match"] is False),
            max_mwis_nodes=max(
                (r["nodes"] for r in successful if r["problem"] == "mwis"), default=0
            ),
            max_state_count=max((r["max_state_count"] for r in successful), default=0),
            errors=errors,
            individual_results=results,
            undersized=len({
                r["instance_id"] for r in results
                if r["requested_n"] is not None and r["n"] < r["requested_n"]
            }),
            **{name: sum(r[name] for r in results) for name in CLAIM_COUNTERS},
        )

    def _save_results(self, results: CorpusResults, config: CorpusConfig) -> Path:
        output_dir = Path(config.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        base_filename = f"{results.run_name}_{timestamp}"

        if config.output_format.lower() == "csv":
            filepath = output_dir / f"{base_filename}.csv"
            if results.individual_results:
                with open(filepath, "w", newline="") as f:
                    writer = csv.DictWriter(f, fieldnames=list(results.individual_results[0]))
                    writer.writeheader()
                    writer.writerows(results.individual_results)
            else:
                logger.warning("No individual results to save as CSV")
        else:
            if config.output_format.lower() != "json":
                logger.warning(f"Unknown output format: {config.output_format}. Saving as JSON.")
            filepath = output_dir / f"{base_filename}.json"
            with open(filepath, "w") as f:
                json.dump(asdict(results), f, indent=2, default=str)
        logger.info(f"Results saved to: {filepath}")
        return filepath

    def print_summary(self, results: CorpusResults) -> None:
        print(f"\n{'='*60}")
        print(f"CORPUS SUMMARY: {results.run_name}")
        print(f"{'='*60}")
        print(f"Family: {results.config.family.value}")
        print(f"Duration: {results.total_duration:.2f}s")
        print(f"Runs: {results.total_runs} ({results.successful_runs} ok, {results.failed_runs} failed)")
        print(f"Oracle checked: {results.oracle_checked}")
        print(f"Mismatches: {results.mismatches}")
        print(f"Max MWIS branching nodes: {results.max_mwis_nodes}")
        print(f"Max EDS states per bag: {results.max_state_count}")
        print(f"Nuke seeds: {results.nuke_seeds}")
        print(f"Below-gamma events: {results.below_gamma_events}")
        print(f"Small-PMC violations: {results.small_pmc_violations}")
        print(f"Shrink warnings: {results.shrink_warnings}")
        if results.undersized:
            print(f"Instances below requested size: {results.undersized}")
        if results.errors:
            print("\nErrors:")
            for error, count in results.errors.items():
                print(f"  {error}: {count}")


GROWTH_COLUMNS = ["family", "n", "mwis_nodes_max", "mwis_nodes_mean", "eds_states_max"]


def growth_table(results: CorpusResults) -> pd.DataFrame:
    """Branching nodes and state counts grouped by (family, n)."""
    frame = pd.DataFrame(results.individual_results)
    if frame.empty or not frame["success"].any():
        return pd.DataFrame(columns=GROWTH_COLUMNS)
    ok = frame[frame["success"]]
    keys = ["family", "n"]
    mwis = ok[ok["problem"] == "mwis"].groupby(keys)["nodes"].agg(
        mwis_nodes_max="max", mwis_nodes_mean="mean"
    )
    eds = ok[ok["problem"] == "eds"].groupby(keys)["max_state_count"].agg(eds_states_max="max")
    table = mwis.join(eds, how="outer").reset_index()
    return table.reindex(columns=GROWTH_COLUMNS).sort_values(keys).reset_index(drop=True)
