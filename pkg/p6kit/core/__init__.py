"""Solvers, oracles, generators and the verification harness."""

from .corpus_runner import CorpusConfig, CorpusResults, CorpusRunner, growth_table
from .eds_solver import EDSConfig, EDSDynamicProgram, EDSMode, EDSStats, solve_eds
from .eds_states import Marker, State, StateFamily, enumerate_states, state_consistent
from .instance_gen import Family, GenSpec, generate
from .mwis_solver import MWISSolver, SolveStats, SolverConfig, Strictness, solve_mwis
from .oracle import OracleLimits, eds_bruteforce, mwis_bruteforce
from .solution import Solution, verify_solution
from .structure_verify import Theorem, check_counterexamples, run_hitting_suite

__all__ = [
    "CorpusConfig", "CorpusResults", "CorpusRunner", "growth_table",
    "EDSConfig", "EDSDynamicProgram", "EDSMode", "EDSStats", "solve_eds",
    "Marker", "State", "StateFamily", "enumerate_states", "state_consistent",
    "Family", "GenSpec", "generate",
    "MWISSolver", "SolveStats", "SolverConfig", "Strictness", "solve_mwis",
    "OracleLimits", "eds_bruteforce", "mwis_bruteforce",
    "Solution", "verify_solution",
    "Theorem", "check_counterexamples", "run_hitting_suite",
]
