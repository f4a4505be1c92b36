"""State families for the efficient dominating set dynamic program.

For a potential maximal clique Ω of G, a state maps every v ∈ Ω to the
place of its unique dominator: a component of G − Ω, Ω itself (OMEGA), or
"v is in the solution" (BOT). ``StateEnumerator`` runs a branching
procedure whose nodes carry a pair (X0, Y): X0 are decided solution
vertices, Y the vertices still allowed to join. Every efficient
dominating set X that contains X0 and lies inside X0 ∪ Y is consistent
with the state emitted at some leaf below the node.

Node processing order: normalize (drop N²[X0] from Y, reject broken
labels), apply the reduction rule exhaustively, test for a leaf, order the
active components into a chain, repair linkedness once, then branch on a
bad vertex or take the final branch.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..errors import NotP6Free, PreconditionViolation, StructureViolation
from ..graph.bitset import VertexSet, bit, is_subset, iter_bits, lowest, members, popcount
from ..graph.core import (
    Graph,
    closed_neighborhood_of_set,
    connected_components,
    open_neighborhood,
    second_closed_neighborhood,
    union_of_neighborhoods,
)
from .budget import NodeBudget
from .solution import is_efficient_dominating_set

logger = logging.getLogger(__name__)


class Marker(IntEnum):
    """Non-component state values."""
    OMEGA = -1
    BOT = -2


@dataclass(frozen=True)
class State:
    """Assignment aligned with the members of Ω in increasing id order.

    Non-negative values index the family's components; negative values are
    ``Marker`` members.
    """
    assignment: Tuple[int, ...]


@dataclass
class StateFamily:
    omega: VertexSet
    components: Tuple[VertexSet, ...]
    states: List[State] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.order = tuple(members(self.omega))
        self.position = {v: i for i, v in enumerate(self.order)}

    def __len__(self) -> int:
        return len(self.states)

    def value(self, f: State, v: int) -> int:
        return f.assignment[self.position[v]]

    def bot_mask(self, f: State) -> VertexSet:
        return sum(1 << v for v, x in zip(self.order, f.assignment) if x == Marker.BOT)

    def region(self, value: int) -> VertexSet:
        """Vertices where a dominator described by ``value`` may live."""
        if value == Marker.OMEGA:
            return self.omega
        if value == Marker.BOT:
            return 0
        return self.components[value]

    def describe(self, f: State) -> Dict[int, str]:
        names = {Marker.OMEGA: "OMEGA", Marker.BOT: "BOT"}
        return {
            v: names.get(x, f"C{x}") for v, x in zip(self.order, f.assignment)
        }


@dataclass
class EnumerationStats:
    branching_nodes: int = 0
    leaves: int = 0
    terminated_branches: int = 0
    reductions: int = 0
    linkedness_repairs: int = 0
    bad_vertex_branches: int = 0
    final_branches: int = 0
    shrink_warnings: int = 0

    def merge(self, other: "EnumerationStats") -> "EnumerationStats":
        for name, value in asdict(other).items():
            setattr(self, name, getattr(self, name) + value)
        return self


@dataclass(frozen=True)
class _Shrink:
    """Expected bound |B'| <= num/den * before for a child node."""
    before: int
    num: int
    den: int
    branch: str


class StateEnumerator:
    """Enumerates the state family of one potential maximal clique."""

    def __init__(
        self,
        G: Graph,
        omega: VertexSet,
        beta: Fraction = Fraction(1, 576),
        budget: Optional[NodeBudget] = None,
        assert_shrink: bool = False,
        stats: Optional[EnumerationStats] = None,
    ) -> None:
        if not omega:
            raise ValueError("state enumeration needs a non-empty bag")
        self.G = G
        self.omega = omega
        self.root_cap = math.ceil(1 / Fraction(beta))
        self.budget = budget or NodeBudget.of("eds-states", None)
        self.assert_shrink = assert_shrink
        self.stats = stats or EnumerationStats()

        self.components = tuple(connected_components(G, G.vertices & ~omega))
        self.component_id = [-1] * G.n
        for index, component in enumerate(self.components):
            for v in iter_bits(component):
                self.component_id[v] = index
        self.component_neighborhood = [open_neighborhood(G, c) for c in self.components]
        self.closed = [G.adjacency[v] | bit(v) for v in range(G.n)]
        self.second = [second_closed_neighborhood(G, v) for v in range(G.n)]
        self.family = StateFamily(omega, self.components)
        self._seen: Dict[State, None] = {}

    def run(self) -> StateFamily:
        for x_omega in self._root_layer():
            y = self.G.vertices & ~(self._second_of(x_omega) | self.omega)
            self._explore(x_omega, y, linked=False)
        self.family.states = list(self._seen)
        logger.debug(
            "Bag %s: %d states from %d branching nodes",
            members(self.omega), len(self.family), self.stats.branching_nodes,
        )
        return self.family

    def _root_layer(self) -> List[VertexSet]:
        """Subsets of Ω with pairwise distance >= 3, up to the size cap."""
        found: List[VertexSet] = []
        order = members(self.omega)

        def extend(start: int, chosen: VertexSet, blocked: VertexSet, size: int) -> None:
            found.append(chosen)
            if size == self.root_cap:
                return
            for i in range(start, len(order)):
                v = order[i]
                if not (blocked >> v) & 1:
                    extend(i + 1, chosen | bit(v), blocked | self.second[v], size + 1)

        extend(0, 0, 0, 0)
        return found

    def _second_of(self, X: VertexSet) -> VertexSet:
        mask = 0
        for x in iter_bits(X):
            mask |= self.second[x]
        return mask

    def _b_set(self, X0: VertexSet, Y: VertexSet) -> VertexSet:
        """Undominated Ω-vertices whose Y-neighbors span two or more components."""
        undominated = self.omega & ~closed_neighborhood_of_set(self.G, X0)
        B = 0
        for v in iter_bits(undominated):
            ny = self.G.adjacency[v] & Y
            if ny and ny & ~self.components[self.component_id[lowest(ny)]]:
                B |= bit(v)
        return B

    def _settle(self, X0: VertexSet, Y: VertexSet) -> Optional[Tuple[VertexSet, VertexSet]]:
        """Normalize the label and apply the reduction rule to a fixed point.

        Returns the reduced (Y, B), or None when the branch is dead.
        """
        for x in iter_bits(X0):
            if self.second[x] & X0 & ~bit(x):
                return None
        Y &= ~self._second_of(X0)
        adjacency = self.G.adjacency
        while True:
            B = self._b_set(X0, Y)
            reduced = False
            for v in iter_bits(B):
                for u in iter_bits(adjacency[v] & Y):
                    if is_subset(self.closed[u] & Y, adjacency[v]):
                        own = self.components[self.component_id[u]]
                        Y &= ~(adjacency[v] & ~own)
                        self.stats.reductions += 1
                        reduced = True
                        break
                if reduced:
                    break
            if not reduced:
                break
        if closed_neighborhood_of_set(self.G, X0 | Y) != self.G.vertices:
            return None
        return Y, B

    def _chain(self, B: VertexSet, Y: VertexSet) -> List[int]:
        """Active components ordered by |N_B(C)|, checked to be nested with
        the top two both equal to B.

        Raises:
            NotP6Free: if the neighborhoods in B are not nested.
        """
        active = [i for i, c in enumerate(self.components) if c & Y]
        nb = {i: self.component_neighborhood[i] & B for i in active}
        chain = sorted(active, key=lambda i: (-popcount(nb[i]), i))
        if len(chain) < 2 or nb[chain[0]] != B or nb[chain[1]] != B:
            raise NotP6Free(
                f"top active components do not see all of B = {members(B)}"
            )
        for previous, current in zip(chain, chain[1:]):
            if not is_subset(nb[current], nb[previous]):
                raise NotP6Free(
                    f"components {previous} and {current} have incomparable "
                    f"neighborhoods in B"
                )
        return chain

    def _emit(self, X0: VertexSet, Y: VertexSet) -> None:
        assignment = []
        dominators = X0 | Y
        for v in self.family.order:
            if (X0 >> v) & 1:
                assignment.append(Marker.BOT)
            elif self.G.adjacency[v] & X0 & self.omega:
                assignment.append(Marker.OMEGA)
            else:
                around = self.closed[v] & dominators
                index = self.component_id[lowest(around)]
                if index < 0 or not is_subset(around, self.components[index]):
                    raise StructureViolation(
                        f"leaf reached with vertex {v} seeing several components"
                    )
                assignment.append(index)
        state = State(tuple(int(x) for x in assignment))
        self.stats.leaves += 1
        if state not in self._seen:
            self._seen[state] = None
            logger.debug("Emitted state %s", self.family.describe(state))

    def _check_shrink(self, B: VertexSet, shrink: Optional[_Shrink]) -> None:
        if shrink is None:
            return
        if popcount(B) * shrink.den <= shrink.num * shrink.before:
            return
        self.stats.shrink_warnings += 1
        message = (
            f"{shrink.branch}: |B| went from {shrink.before} to {popcount(B)}, "
            f"expected at most {shrink.num}/{shrink.den} of it"
        )
        if self.assert_shrink:
            raise NotP6Free(message)
        logger.warning(message)

    def _child(
        self,
        parent: Tuple[VertexSet, VertexSet],
        X0: VertexSet,
        Y: VertexSet,
        linked: bool,
        shrink: Optional[_Shrink] = None,
    ) -> None:
        if (X0, Y) == parent:
            raise NotP6Free(
                f"branching made no progress at X0 = {members(X0)}, |Y| = {popcount(Y)}"
            )
        self._explore(X0, Y, linked, shrink)

    def _explore(
        self, X0: VertexSet, Y: VertexSet, linked: bool, shrink: Optional[_Shrink] = None
    ) -> None:
        self.budget.charge()
        self.stats.branching_nodes += 1
        settled = self._settle(X0, Y)
        if settled is None:
            self.stats.terminated_branches += 1
            return
        Y, B = settled
        self._check_shrink(B, shrink)
        if not B:
            self._emit(X0, Y)
            return
        here = (X0, Y)
        chain = self._chain(B, Y)

        if not linked:
            first, second = chain[0], chain[1]
            if self.component_neighborhood[first] | self.component_neighborhood[second] == self.omega:
                self._repair_linkedness(here, first, second)
                return
            linked = True

        size_b = popcount(B)
        adjacency = self.G.adjacency
        y1 = [y for y in iter_bits(Y) if 16 * popcount(adjacency[y] & B) >= size_b]
        star: List[int] = []
        bad: List[Tuple[int, VertexSet]] = []
        for y in y1:
            outcome = self._settle(X0 | bit(y), Y)
            if outcome is None or not outcome[1]:
                star.append(y)
            else:
                bad.append((y, outcome[1]))

        if bad:
            y, b_circ = bad[0]
            self.stats.bad_vertex_branches += 1
            outside = ~self.components[self.component_id[y]]
            dominated_here = union_of_neighborhoods(self.G, adjacency[y] & B)
            bound = _Shrink(size_b, 15, 16, "bad-vertex branch")
            self._child(here, X0, Y & ~(dominated_here & outside), True, bound)
            dominated_there = union_of_neighborhoods(self.G, b_circ)
            self._child(here, X0, Y & ~(dominated_there & outside), True, bound)
            return

        self.stats.final_branches += 1
        y1_mask = sum(1 << y for y in y1)
        self._child(here, X0, Y & ~y1_mask, True, _Shrink(size_b, 1, 2, "final branch"))
        for y in star:
            self._child(here, X0 | bit(y), Y, True, _Shrink(size_b, 0, 1, "final branch guess"))

    def _repair_linkedness(
        self, here: Tuple[VertexSet, VertexSet], first: int, second: int
    ) -> None:
        """Pin the solution vertex inside a component that has a fully
        adjacent Ω-vertex.

        Raises:
            NotP6Free: if neither top component has a fully adjacent vertex.
        """
        X0, Y = here
        for index in (first, second):
            component = self.components[index]
            if any(
                is_subset(component, self.G.adjacency[v]) for v in iter_bits(self.omega)
            ):
                break
        else:
            raise NotP6Free(
                f"no Ω-vertex is fully adjacent to component {first} or {second}"
            )
        self.stats.linkedness_repairs += 1
        inside = Y & component
        for y in iter_bits(inside):
            self._child(here, X0 | bit(y), Y & ~inside, True)


def enumerate_states(
    G: Graph,
    omega: VertexSet,
    beta: Fraction = Fraction(1, 576),
    budget: Optional[NodeBudget] = None,
    assert_shrink: bool = False,
    stats: Optional[EnumerationStats] = None,
) -> StateFamily:
    """State family of Ω covering every efficient dominating set of G.

    Raises:
        NotP6Free: when a guarantee that holds on P6-free graphs fails.
        BudgetExceeded: if the node budget runs out.
    """
    return StateEnumerator(G, omega, beta, budget, assert_shrink, stats).run()


def state_consistent(f: State, X: VertexSet, G: Graph, family: StateFamily) -> bool:
    """X ∩ Ω is exactly the BOT part of f, and every other Ω-vertex has its
    unique dominator inside the region f names.

    Raises:
        PreconditionViolation: if X is not an efficient dominating set.
    """
    if not is_efficient_dominating_set(G, X):
        raise PreconditionViolation(f"{members(X)} is not an efficient dominating set")
    for v in family.order:
        value = family.value(f, v)
        if (X >> v) & 1:
            if value != Marker.BOT:
                return False
            continue
        if value == Marker.BOT:
            return False
        dominator = G.adjacency[v] & X
        if not dominator & family.region(value):
            return False
    return True
