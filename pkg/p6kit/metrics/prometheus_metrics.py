"""Prometheus metrics exporter for solver and corpus runs."""

import logging
import threading
from typing import Any, Dict, List, Optional

from prometheus_client import CONTENT_TYPE_LATEST, Counter, Gauge, Histogram, generate_latest
from prometheus_client.core import CollectorRegistry

logger = logging.getLogger(__name__)


class SolverMetrics:
    """Counters, histogram and gauge describing solver activity."""

    def __init__(self) -> None:
        # one registry per instance so tests can create several
        self.registry = CollectorRegistry()
        self._lock = threading.Lock()

        self.solve_counter = Counter(
            'p6kit_solves_total',
            'Solver invocations by problem and outcome',
            ['problem', 'status'],
            registry=self.registry
        )
        self.branch_counter = Counter(
            'p6kit_branch_nodes_total',
            'Branching nodes visited',
            ['problem', 'procedure'],
            registry=self.registry
        )
        self.fallback_counter = Counter(
            'p6kit_fallbacks_total',
            'Fallbacks out of a nuke phase or to brute force',
            ['problem'],
            registry=self.registry
        )
        self.below_gamma_counter = Counter(
            'p6kit_below_gamma_total',
            'Nuke branching steps whose best vertex missed the gamma bound',
            registry=self.registry
        )
        self.claim_counter = Counter(
            'p6kit_claim_failures_total',
            'Runtime claims that did not hold',
            ['claim'],
            registry=self.registry
        )
        self.solve_seconds = Histogram(
            'p6kit_solve_seconds',
            'Wall-clock time per solve',
            ['problem'],
            buckets=(0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, float('inf')),
            registry=self.registry
        )
        self.max_state_gauge = Gauge(
            'p6kit_max_state_count',
            'Largest per-bag state family seen so far',
            registry=self.registry
        )
        self._max_states = 0

        logger.info("Initialized solver metrics")

    def record_mwis(self, stats: Any, seconds: float, status: str = "optimal") -> None:
        """Record one MWIS solve.

        Args:
            stats: ``SolveStats`` of the run, or None for a failed run.
            seconds: Wall-clock duration.
            status: Outcome label (optimal or an error name).
        """
        with self._lock:
            self.solve_counter.labels(problem="mwis", status=status).inc()
            self.solve_seconds.labels(problem="mwis").observe(seconds)
            if stats is None:
                return
            self.branch_counter.labels(problem="mwis", procedure="find_is").inc(stats.findis_nodes)
            self.branch_counter.labels(problem="mwis", procedure="find_is_nuke").inc(
                stats.findisnuke_nodes
            )
            self.fallback_counter.labels(problem="mwis").inc(stats.fallback_calls)
            self.below_gamma_counter.inc(stats.below_gamma_events)
            if stats.small_pmc_violations:
                self.claim_counter.labels(claim="small-pmc").inc(stats.small_pmc_violations)

    def record_eds(self, stats: Any, seconds: float, status: str = "optimal") -> None:
        """Record one EDS solve; ``stats`` is an ``EDSStats`` or None."""
        with self._lock:
            self.solve_counter.labels(problem="eds", status=status).inc()
            self.solve_seconds.labels(problem="eds").observe(seconds)
            if stats is None:
                return
            self.branch_counter.labels(problem="eds", procedure="enumerate_states").inc(
                stats.total_nodes
            )
            self.fallback_counter.labels(problem="eds").inc(stats.fallback_components)
            if stats.enumeration.shrink_warnings:
                self.claim_counter.labels(claim="shrink").inc(stats.enumeration.shrink_warnings)
            if stats.max_state_count > self._max_states:
                self._max_states = stats.max_state_count
                self.max_state_gauge.set(self._max_states)

    def record_claim_failure(self, claim: str) -> None:
        with self._lock:
            self.claim_counter.labels(claim=claim).inc()

    def record_batch_results(self, results: List[Dict[str, Any]]) -> None:
        """Record the per-run dictionaries produced by the corpus runner."""
        with self._lock:
            for result in results:
                problem = result.get("problem", "unknown")
                self.solve_counter.labels(problem=problem, status=result.get("status", "error")).inc()
                self.solve_seconds.labels(problem=problem).observe(result.get("seconds", 0.0))
                nodes = result.get("nodes") or 0
                if nodes:
                    self.branch_counter.labels(problem=problem, procedure="all").inc(nodes)
                states = result.get("max_state_count") or 0
                if states > self._max_states:
                    self._max_states = states
                    self.max_state_gauge.set(states)
                claim = result.get("claim")
                if claim:
                    self.claim_counter.labels(claim=claim).inc()

    def get_metrics(self) -> str:
        """Current metrics in Prometheus exposition format."""
        return generate_latest(self.registry).decode('utf-8')

    def get_content_type(self) -> str:
        return CONTENT_TYPE_LATEST

    def get_current_stats(self) -> Dict[str, Any]:
        """Totals parsed back out of the exposition text."""
        stats: Dict[str, Any] = {
            "total_solves": 0,
            "total_branch_nodes": 0,
            "total_fallbacks": 0,
            "total_claim_failures": 0,
            "max_state_count": 0,
            "metrics_available": True
        }
        prefixes = {
            'p6kit_solves_total': "total_solves",
            'p6kit_branch_nodes_total': "total_branch_nodes",
            'p6kit_fallbacks_total': "total_fallbacks",
            'p6kit_claim_failures_total': "total_claim_failures",
            'p6kit_max_state_count': "max_state_count",
        }
        try:
            for line in self.get_metrics().split('\n'):
                if not line or line.startswith('#'):
                    continue
                name = line.split('{')[0].split(' ')[0]
                key: Optional[str] = prefixes.get(name)
                if key is not None:
                    stats[key] += float(line.split(' ')[-1])
        except Exception as e:
            logger.error(f"Error parsing metrics: {e}")
            stats["metrics_available"] = False
        return stats
