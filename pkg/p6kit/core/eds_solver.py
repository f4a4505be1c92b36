"""Maximum weight efficient dominating set by dynamic programming over a
clique tree of a minimal triangulation."""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..errors import NotP6Free, StructureViolation
from ..graph.bitset import VertexSet, bit, is_subset, iter_bits, members
from ..graph.chordal import CliqueTree, clique_tree, minimal_triangulation
from ..graph.core import (
    WeightedGraph,
    connected_components,
    induced_weighted_subgraph,
    lift,
    union_of_neighborhoods,
)
from ..graph.patterns import find_induced_path
from ..utils import to_fraction
from .budget import NodeBudget
from .eds_states import EnumerationStats, State, StateFamily, enumerate_states
from .oracle import OracleLimits, eds_bruteforce
from .solution import Solution, is_efficient_dominating_set

logger = logging.getLogger(__name__)


class EDSMode(Enum):
    """What to do when a P6-free guarantee fails."""
    STRICT = "strict"
    FALLBACK = "fallback"


@dataclass
class EDSConfig:
    """Configuration for the EDS solver."""
    beta: Fraction = Fraction(1, 576)
    mode: EDSMode = EDSMode.STRICT
    fallback_max_n: int = 25
    node_budget: Optional[int] = None
    assert_shrink: bool = False
    verify_class: bool = True

    def __post_init__(self) -> None:
        self.beta = to_fraction(self.beta)
        if isinstance(self.mode, str):
            self.mode = EDSMode(self.mode)
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if self.fallback_max_n < 0:
            raise ValueError(f"fallback_max_n must be non-negative, got {self.fallback_max_n}")

    @classmethod
    def from_mapping(cls, values: Dict[str, Any]) -> "EDSConfig":
        known = {k: v for k, v in values.items() if k in cls.__dataclass_fields__}
        unknown = set(values) - set(known)
        if unknown:
            raise ValueError(f"unknown eds config keys: {sorted(unknown)}")
        return cls(**known)


@dataclass
class EDSStats:
    enumeration: EnumerationStats = field(default_factory=EnumerationStats)
    bag_state_counts: List[int] = field(default_factory=list)
    components: int = 0
    fallback_components: int = 0

    @property
    def max_state_count(self) -> int:
        return max(self.bag_state_counts, default=0)

    @property
    def total_nodes(self) -> int:
        return self.enumeration.branching_nodes

    def merge(self, other: "EDSStats") -> "EDSStats":
        self.enumeration.merge(other.enumeration)
        self.bag_state_counts.extend(other.bag_state_counts)
        self.components += other.components
        self.fallback_components += other.fallback_components
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self.enumeration)
        data.update(
            bag_state_counts=list(self.bag_state_counts),
            max_state_count=self.max_state_count,
            components=self.components,
            fallback_components=self.fallback_components,
        )
        return data


class EDSDynamicProgram:
    """Bottom-up table Y(t, f) over the rooted clique tree of one connected
    weighted graph."""

    def __init__(
        self,
        Gw: WeightedGraph,
        config: Optional[EDSConfig] = None,
        stats: Optional[EDSStats] = None,
        budget: Optional[NodeBudget] = None,
    ) -> None:
        self.Gw = Gw
        self.G = Gw.graph
        self.config = config or EDSConfig()
        self.stats = stats or EDSStats()
        self.budget = budget or NodeBudget.of("eds", self.config.node_budget)
        fill = minimal_triangulation(self.G)
        self.tree: CliqueTree = clique_tree(self.G, fill).rooted(0)
        self.cone = self.tree.cones()
        self.families: Dict[int, StateFamily] = {}

    def build_families(self) -> Dict[int, StateFamily]:
        for t, bag in enumerate(self.tree.bags):
            family = enumerate_states(
                self.G, bag, self.config.beta, self.budget,
                self.config.assert_shrink, self.stats.enumeration,
            )
            self.families[t] = family
            self.stats.bag_state_counts.append(len(family))
        return self.families

    def is_partial_solution(self, t: int, Y: VertexSet) -> bool:
        """Closed neighborhoods of Y are pairwise disjoint and cover
        γ(t) ∖ β(t)."""
        covered = 0
        for u in iter_bits(Y):
            ball = self.G.adjacency[u] | bit(u)
            if ball & covered:
                return False
            covered |= ball
        return is_subset(self.cone[t] & ~self.tree.bags[t], covered)

    def partially_consistent(self, Yp: VertexSet, f: State, t: int, child: int) -> bool:
        """Whether a child entry Y′ fits state f of the parent bag."""
        family = self.families[t]
        bag, child_bag = self.tree.bags[t], self.tree.bags[child]
        if Yp & bag & child_bag != family.bot_mask(f) & child_bag:
            return False
        touched = union_of_neighborhoods(self.G, Yp) & ~Yp
        around = touched | Yp
        for v in iter_bits(bag):
            value = family.value(f, v)
            if (touched >> v) & 1:
                if not self.G.adjacency[v] & Yp & family.region(value):
                    return False
            elif not (around >> v) & 1 and value >= 0:
                if family.components[value] & self.cone[child]:
                    return False
        return True

    def consistent_with_state(self, Y: VertexSet, f: State, t: int) -> bool:
        """Y ∩ β(t) is f⁻¹(⊥), dominated bag vertices see their dominator in
        f(v), and undominated ones point at a component outside γ(t)."""
        family = self.families[t]
        bag = self.tree.bags[t]
        if Y & bag != family.bot_mask(f):
            return False
        touched = union_of_neighborhoods(self.G, Y) & ~Y
        for v in iter_bits(bag & ~Y):
            value = family.value(f, v)
            if (touched >> v) & 1:
                if not self.G.adjacency[v] & Y & family.region(value):
                    return False
            elif value < 0 or family.components[value] & self.cone[t]:
                return False
        return True

    def _best_child_entry(
        self, table: Dict[State, Solution], f: State, t: int, child: int
    ) -> Optional[Solution]:
        best: Optional[Solution] = None
        for entry in table.values():
            if best is not None and entry.weight <= best.weight:
                continue
            if self.partially_consistent(entry.chosen, f, t, child):
                best = entry
        return best

    def solve(self) -> Optional[Solution]:
        """Maximum weight EDS of the graph, or None if it has none."""
        if not self.families:
            self.build_families()
        tables: Dict[int, Dict[State, Solution]] = {}
        for t in self.tree.postorder():
            family = self.families[t]
            table: Dict[State, Solution] = {}
            for f in family.states:
                Y = family.bot_mask(f)
                for child in self.tree.children[t]:
                    entry = self._best_child_entry(tables[child], f, t, child)
                    if entry is None:
                        break
                    Y |= entry.chosen
                else:
                    if self.is_partial_solution(t, Y) and self.consistent_with_state(Y, f, t):
                        table[f] = Solution(self.Gw.weight_of(Y), Y)
            tables[t] = table
            logger.debug("Bag %d: %d of %d states realized", t, len(table), len(family))

        best: Optional[Solution] = None
        for entry in tables[self.tree.root].values():
            if best is not None and entry.weight <= best.weight:
                continue
            if is_efficient_dominating_set(self.G, entry.chosen):
                best = entry
        return best


def _bruteforce(Gw: WeightedGraph, config: EDSConfig, reason: str) -> Optional[Solution]:
    if Gw.n > config.fallback_max_n:
        raise NotP6Free(f"{reason}; n = {Gw.n} exceeds the fallback cap {config.fallback_max_n}")
    logger.warning("%s; solving %d vertices by brute force", reason, Gw.n)
    result = eds_bruteforce(Gw, OracleLimits(eds=config.fallback_max_n))
    return None if result is None else result.best


def solve_eds(
    Gw: WeightedGraph, config: Optional[EDSConfig] = None
) -> Tuple[Optional[Solution], EDSStats]:
    """Maximum weight efficient dominating set; the solution is None when G
    has no EDS.

    Raises:
        NotP6Free: in strict mode when the input is not P6-free or a
            P6-free guarantee fails.
        BudgetExceeded: if the node budget runs out.
    """
    config = config or EDSConfig()
    stats = EDSStats()
    budget = NodeBudget.of("eds", config.node_budget)
    fallback = config.mode is EDSMode.FALLBACK

    if config.verify_class and Gw.n:
        witness = find_induced_path(Gw.graph, 6)
        if witness is not None:
            reason = f"induced P6 on {list(witness.vertices)}"
            if not fallback:
                raise NotP6Free(reason)
            stats.fallback_components += 1
            return _bruteforce(Gw, config, reason), stats

    total = Solution(0, 0)
    for component in connected_components(Gw.graph):
        stats.components += 1
        local, mapping = induced_weighted_subgraph(Gw, component)
        try:
            found = EDSDynamicProgram(local, config, stats, budget).solve()
        except StructureViolation as exc:
            if not fallback:
                raise
            stats.fallback_components += 1
            found = _bruteforce(local, config, str(exc))
        if found is None:
            logger.info("EDS: component %s has no efficient dominating set", members(component)[:8])
            return None, stats
        total = total + Solution(found.weight, lift(found.chosen, mapping))

    if not is_efficient_dominating_set(Gw.graph, total.chosen):
        raise StructureViolation("solver assembled a set that is not an EDS")
    logger.info(
        "EDS solved: n=%d weight=%d size=%d max_states=%d nodes=%d",
        Gw.n, total.weight, len(total.vertices), stats.max_state_count, stats.total_nodes,
    )
    return total, stats
