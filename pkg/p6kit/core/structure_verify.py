"""Empirical checks of the hitting bounds and of the counterexample families.

Each ``verify_hit_*`` call finds the vertex v maximizing μ(N(v)) for a
measure μ on a target set (a minimal separator, a potential maximal clique
or an inclusion-minimal nuke) and compares it with the bound for that kind
of target.
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from ..errors import ClaimViolation, PatternBudgetExceeded, PreconditionViolation
from ..graph.bitset import VertexSet, bit, iter_bits, mask_of, members, popcount
from ..graph.chordal import (
    clique_tree,
    is_minimal_separator,
    is_minimal_triangulation,
    is_pmc,
    minimal_triangulation,
)
from ..graph.core import (
    Graph,
    WeightedGraph,
    connected_components,
    induced_subgraph,
    is_connected,
    open_neighborhood,
)
from ..graph.nuke import Measure, NukeParams, is_minimal_nuke, is_nuke
from ..graph.patterns import DEFAULT_PATTERN_BUDGET, contains_induced, e_graph, find_induced_path
from .eds_states import enumerate_states, state_consistent
from .instance_gen import NUKE_ETA, gen_counterexample_nuke, gen_counterexample_separator
from .mwis_solver import SolverConfig, solve_mwis
from .oracle import OracleLimits, enumerate_eds, minimal_separators_bruteforce, pmcs_bruteforce

logger = logging.getLogger(__name__)

ALPHA = Fraction(1, 24)
BETA = Fraction(1, 576)
GAMMA = BETA / 10


class Theorem(Enum):
    """Which hitting bound a check is about."""
    HIT_SEP = "hit-sep"
    HIT_PMC = "hit-pmc"
    HIT_NUKE = "hit-nuke"

    @property
    def bound(self) -> Fraction:
        return {Theorem.HIT_SEP: ALPHA, Theorem.HIT_PMC: BETA, Theorem.HIT_NUKE: GAMMA}[self]


@dataclass(frozen=True)
class HitReport:
    best_vertex: int
    best_mass: Fraction
    target_set_size: int
    bound: Fraction
    satisfied: bool

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["best_mass"] = str(self.best_mass)
        data["bound"] = str(self.bound)
        return data


def adversarial_measure(G: Graph, target: VertexSet) -> Measure:
    """All mass on the two lowest-degree members of ``target``, half each."""
    if not target:
        raise ValueError("adversarial measure needs a non-empty target")
    chosen = sorted(iter_bits(target), key=lambda v: (G.degree(v), v))[:2]
    return Measure({v: Fraction(1, len(chosen)) for v in chosen})


def _hit(G: Graph, target: VertexSet, mu: Measure, bound: Fraction) -> HitReport:
    if mu.support & ~target:
        raise PreconditionViolation(
            f"measure support {members(mu.support)} leaves the target set"
        )
    best_vertex, best_mass = -1, Fraction(-1)
    for v in range(G.n):
        mass = mu.of(G.adjacency[v])
        if mass > best_mass:
            best_vertex, best_mass = v, mass
    return HitReport(best_vertex, best_mass, popcount(target), bound, best_mass >= bound)


def _require_connected(G: Graph) -> None:
    if G.n < 2 or not is_connected(G):
        raise PreconditionViolation("the hitting check needs a connected graph with n >= 2")


def verify_hit_sep(G: Graph, S: VertexSet, mu: Optional[Measure] = None) -> HitReport:
    """Raises:
        PreconditionViolation: if S is not a minimal separator.
    """
    if not S or not is_minimal_separator(G, S):
        raise PreconditionViolation(f"{members(S)} is not a minimal separator")
    return _hit(G, S, mu or Measure.uniform(S), ALPHA)


def verify_hit_pmc(G: Graph, omega: VertexSet, mu: Optional[Measure] = None) -> HitReport:
    _require_connected(G)
    if not is_pmc(G, omega):
        raise PreconditionViolation(f"{members(omega)} is not a potential maximal clique")
    return _hit(G, omega, mu or Measure.uniform(omega), BETA)


def verify_hit_nuke(
    G: Graph, X: VertexSet, p: NukeParams, mu: Optional[Measure] = None
) -> HitReport:
    _require_connected(G)
    if not is_minimal_nuke(G, X, p):
        raise PreconditionViolation(
            f"{members(X)} is not an inclusion-minimal nuke for eta={p.eta}, tau={p.tau}"
        )
    return _hit(G, X, mu or Measure.uniform(X), GAMMA)


@dataclass
class SuiteSummary:
    theorem: Theorem
    measure_kind: str
    instances: int = 0
    targets_checked: int = 0
    violations: int = 0
    min_best_mass: Optional[Fraction] = None
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, report: HitReport, graph_index: int, target: VertexSet) -> None:
        self.targets_checked += 1
        if self.min_best_mass is None or report.best_mass < self.min_best_mass:
            self.min_best_mass = report.best_mass
        if not report.satisfied:
            self.violations += 1
            self.failures.append(
                {"graph": graph_index, "target": members(target), **report.to_dict()}
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem.value,
            "measure": self.measure_kind,
            "instances": self.instances,
            "targets_checked": self.targets_checked,
            "violations": self.violations,
            "min_best_mass": None if self.min_best_mass is None else str(self.min_best_mass),
            "failures": self.failures,
        }


def _measure_for(G: Graph, target: VertexSet, measure_kind: str) -> Measure:
    if measure_kind == "uniform":
        return Measure.uniform(target)
    if measure_kind == "adversarial":
        return adversarial_measure(G, target)
    raise ValueError(f"unknown measure kind {measure_kind!r}")


def _minimal_nukes(G: Graph) -> List[tuple]:
    """Every inclusion-minimal nuke the MWIS solver branches on, on the
    connected subgraph where it was found."""
    found: List[tuple] = []

    def observe(alive: VertexSet, Y: VertexSet, params: NukeParams) -> None:
        found.append((alive, Y, params))

    config = SolverConfig(degree_factor=Fraction(1, 2))
    solve_mwis(WeightedGraph(G), config, nuke_observer=observe)
    local_nukes = []
    for alive, Y, params in found:
        local, mapping = induced_subgraph(G, alive)
        X = sum(1 << mapping[v] for v in iter_bits(Y))
        local_nukes.append((local, X, params))
    return local_nukes


def run_hitting_suite(
    graphs: Iterable[Graph],
    theorem: Theorem,
    measure_kind: str = "uniform",
    limits: Optional[OracleLimits] = None,
) -> SuiteSummary:
    """Check one hitting bound on every target of every graph.

    Separators and potential maximal cliques come from the brute-force
    oracles; nukes are the inclusion-minimal ones the MWIS solver meets.
    """
    summary = SuiteSummary(theorem, measure_kind)
    for index, G in enumerate(graphs):
        summary.instances += 1
        if theorem is Theorem.HIT_NUKE:
            for local, X, params in _minimal_nukes(G):
                if local.n < 2:
                    continue
                report = verify_hit_nuke(local, X, params, _measure_for(local, X, measure_kind))
                summary.record(report, index, X)
            continue
        if theorem is Theorem.HIT_SEP:
            targets = [S for S in minimal_separators_bruteforce(G, limits) if S]
            verify = verify_hit_sep
        else:
            if G.n < 2 or not is_connected(G):
                continue
            targets = pmcs_bruteforce(G, limits)
            verify = verify_hit_pmc
        for target in targets:
            report = verify(G, target, _measure_for(G, target, measure_kind))
            summary.record(report, index, target)
    logger.info(
        "%s (%s): %d instances, %d targets, %d violations",
        theorem.value, measure_kind, summary.instances,
        summary.targets_checked, summary.violations,
    )
    return summary


@dataclass
class LawSummary:
    """Outcome of checking one structural law over a corpus."""
    law: str
    instances: int = 0
    checks: int = 0
    violations: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, holds: bool, graph_index: int, **detail: Any) -> None:
        self.checks += 1
        if not holds:
            self.violations += 1
            self.failures.append({"graph": graph_index, **detail})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _connected_pieces(G: Graph) -> List[Graph]:
    return [induced_subgraph(G, c)[0] for c in connected_components(G)]


def run_coverage_suite(
    graphs: Iterable[Graph],
    limits: Optional[OracleLimits] = None,
    assert_shrink: bool = True,
) -> LawSummary:
    """Every efficient dominating set X and every clique-tree bag Ω: some
    enumerated state of Ω is consistent with X.

    Disconnected graphs are checked one component at a time.
    """
    summary = LawSummary("coverage")
    for index, G in enumerate(graphs):
        summary.instances += 1
        for piece in _connected_pieces(G):
            solutions = [mask_of(X) for X in enumerate_eds(piece, limits)]
            if not solutions:
                continue
            tree = clique_tree(piece, minimal_triangulation(piece))
            for bag in tree.bags:
                family = enumerate_states(piece, bag, assert_shrink=assert_shrink)
                for X in solutions:
                    covered = any(state_consistent(f, X, piece, family) for f in family.states)
                    summary.record(covered, index, bag=members(bag), eds=members(X))
    logger.info(
        "coverage: %d instances, %d checks, %d violations",
        summary.instances, summary.checks, summary.violations,
    )
    return summary


def run_structure_suite(
    graphs: Iterable[Graph], limits: Optional[OracleLimits] = None
) -> LawSummary:
    """Cross-check the triangulation layer against the brute-force oracles.

    Per connected component: the fill is inclusion-minimal, every clique-tree
    bag is a potential maximal clique, and N(C) is a minimal separator for
    every component C left by every potential maximal clique.
    """
    summary = LawSummary("structure")
    for index, G in enumerate(graphs):
        summary.instances += 1
        for piece in _connected_pieces(G):
            fill = minimal_triangulation(piece)
            summary.record(
                is_minimal_triangulation(piece, fill), index, check="minimal-fill",
                fill=sorted(fill),
            )
            pmcs = pmcs_bruteforce(piece, limits)
            known = set(pmcs)
            separators = set(minimal_separators_bruteforce(piece, limits))
            for bag in clique_tree(piece, fill).bags:
                summary.record(bag in known, index, check="bag-is-pmc", bag=members(bag))
            for omega in pmcs:
                for component in connected_components(piece, piece.vertices & ~omega):
                    S = open_neighborhood(piece, component)
                    summary.record(
                        S in separators, index, check="pmc-separator",
                        pmc=members(omega), separator=members(S),
                    )
    logger.info(
        "structure: %d instances, %d checks, %d violations",
        summary.instances, summary.checks, summary.violations,
    )
    return summary


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    status: str  # verified | failed | skipped
    detail: str = ""


@dataclass
class CounterexampleReport:
    k_nuke: int
    k_sep: int
    tau: int
    claims: List[ClaimResult] = field(default_factory=list)
    apex_max_adjacency: Optional[int] = None

    def add(self, claim: str, holds: Optional[bool], detail: str = "") -> None:
        if holds is None:
            status = "skipped"
        else:
            status = "verified" if holds else "failed"
        self.claims.append(ClaimResult(claim, status, detail))

    @property
    def failed(self) -> List[ClaimResult]:
        return [c for c in self.claims if c.status == "failed"]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _max_adjacency(G: Graph, X: VertexSet) -> int:
    return max((popcount(G.adjacency[v] & X) for v in range(G.n)), default=0)


def _pattern_claim(
    report: CounterexampleReport,
    claim: str,
    G: Graph,
    contains: Any,
    pattern_max_n: int,
    pattern_budget: int,
    present: bool = False,
) -> None:
    """Record whether G contains the pattern exactly when ``present`` says so."""
    if G.n > pattern_max_n:
        report.add(claim, None, f"budget: n={G.n} exceeds pattern_max_n={pattern_max_n}")
        return
    try:
        report.add(claim, contains(G, pattern_budget) == present)
    except PatternBudgetExceeded as exc:
        report.add(claim, None, f"budget: {exc}")


def check_counterexamples(
    k_nuke: int,
    k_sep: int,
    pattern_max_n: int = 60,
    pattern_budget: int = DEFAULT_PATTERN_BUDGET,
    raise_on_failure: bool = True,
) -> CounterexampleReport:
    """Build both counterexample families and check their claimed properties.

    Raises:
        ClaimViolation: naming the first failed claim, unless
            ``raise_on_failure`` is off.
    """
    if k_nuke < 2 or k_sep < 2:
        raise ValueError(f"k_nuke and k_sep must be at least 2, got {k_nuke}, {k_sep}")
    G, X, tau = gen_counterexample_nuke(k_nuke)
    report = CounterexampleReport(k_nuke, k_sep, tau)

    spread = _max_adjacency(G, X)
    report.add("nuke-adjacency", spread <= 1, f"max |N(v) ∩ X| = {spread}")
    if popcount(X) > NUKE_ETA * G.n:
        report.add(
            "nuke", None,
            f"|X| = {popcount(X)} exceeds eta*n = {float(NUKE_ETA * G.n):.1f}; needs k >= 9",
        )
    else:
        report.add("nuke", is_nuke(G, X, NukeParams(NUKE_ETA, tau)), f"tau = {tau}")
    _pattern_claim(
        report, "p6-present", G,
        lambda H, budget: find_induced_path(H, 6, budget) is not None,
        pattern_max_n, pattern_budget, present=True,
    )
    _pattern_claim(
        report, "p7-free", G,
        lambda H, budget: find_induced_path(H, 7, budget) is not None,
        pattern_max_n, pattern_budget,
    )

    apex_graph, _, _ = gen_counterexample_nuke(k_nuke, apex=True)
    apex_set = X | bit(apex_graph.n - 1)
    report.apex_max_adjacency = _max_adjacency(apex_graph, apex_set)
    report.add(
        "apex-pmc", is_pmc(apex_graph, apex_set),
        f"max |N(v) ∩ (X ∪ {{y}})| = {report.apex_max_adjacency}",
    )

    H, S = gen_counterexample_separator(k_sep)
    report.add("minimal-separator", is_minimal_separator(H, S))
    reach = _max_adjacency(H, S)
    report.add("separator-adjacency", reach == k_sep, f"max |N(v) ∩ S| = {reach}")
    _pattern_claim(
        report, "p8-free", H,
        lambda F, budget: find_induced_path(F, 8, budget) is not None,
        pattern_max_n, pattern_budget,
    )
    _pattern_claim(
        report, "e-free", H,
        lambda F, budget: contains_induced(F, e_graph(), budget),
        pattern_max_n, pattern_budget,
    )

    for claim in report.claims:
        logger.info("claim %-20s %-8s %s", claim.claim, claim.status, claim.detail)
    if report.failed and raise_on_failure:
        first = report.failed[0]
        raise ClaimViolation(first.claim, first.detail)
    return report
