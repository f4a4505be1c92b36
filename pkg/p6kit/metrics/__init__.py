"""Prometheus metrics for solver runs."""

from .prometheus_metrics import SolverMetrics

__all__ = ["SolverMetrics"]
