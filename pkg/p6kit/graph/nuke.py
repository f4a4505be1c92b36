"""Nukes: recognition, inclusion-minimal shrinking and hitting vertices.

A (η, τ)-nuke X of G satisfies (1−2η)|V| ≤ τ ≤ (1−η)|V|, |X| ≤ η|V|, and
|C| + |X| ≤ τ for every component C of G − X. All comparisons are exact.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .bitset import VertexSet, bit, iter_bits, popcount
from .core import Graph, connected_components

logger = logging.getLogger(__name__)

MAX_ETA = Fraction(1, 10)


@dataclass(frozen=True)
class NukeParams:
    eta: Fraction
    tau: int

    def __post_init__(self) -> None:
        eta = Fraction(self.eta)
        object.__setattr__(self, "eta", eta)
        if not 0 < eta <= MAX_ETA:
            raise ValueError(f"eta must lie in (0, 1/10], got {eta}")
        if self.tau < 0:
            raise ValueError(f"tau must be non-negative, got {self.tau}")

    def window_holds(self, n: int) -> bool:
        return (1 - 2 * self.eta) * n <= self.tau <= (1 - self.eta) * n


@dataclass(frozen=True)
class Measure:
    """Probability measure with finite support and rational masses."""

    mass: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if any(m < 0 for m in self.mass.values()):
            raise ValueError("measure masses must be non-negative")
        if self.mass and sum(self.mass.values()) != 1:
            raise ValueError(f"measure masses sum to {sum(self.mass.values())}, not 1")

    @classmethod
    def uniform(cls, support: VertexSet) -> "Measure":
        size = popcount(support)
        if size == 0:
            raise ValueError("uniform measure needs a non-empty support")
        return cls({v: Fraction(1, size) for v in iter_bits(support)})

    @classmethod
    def point(cls, v: int) -> "Measure":
        return cls({v: Fraction(1)})

    @property
    def support(self) -> VertexSet:
        mask = 0
        for v, m in self.mass.items():
            if m:
                mask |= bit(v)
        return mask

    def of(self, mask: VertexSet) -> Fraction:
        return sum((self.mass.get(v, Fraction(0)) for v in iter_bits(mask)), Fraction(0))


def is_nuke(
    G: Graph, X: VertexSet, p: NukeParams, within: Optional[VertexSet] = None
) -> bool:
    scope = G.vertices if within is None else within
    n = popcount(scope)
    if not p.window_holds(n):
        return False
    size = popcount(X)
    if size > p.eta * n:
        return False
    return all(
        popcount(c) + size <= p.tau for c in connected_components(G, scope & ~X)
    )


def minimize_nuke(
    G: Graph, X: VertexSet, p: NukeParams, within: Optional[VertexSet] = None
) -> VertexSet:
    """Drop members of X in increasing id order until no single removal keeps
    X a nuke."""
    current = X
    changed = True
    while changed:
        changed = False
        for v in iter_bits(current):
            candidate = current & ~bit(v)
            if is_nuke(G, candidate, p, within):
                current = candidate
                changed = True
    logger.debug("Minimized nuke from %d to %d vertices", popcount(X), popcount(current))
    return current


def is_minimal_nuke(
    G: Graph, X: VertexSet, p: NukeParams, within: Optional[VertexSet] = None
) -> bool:
    return is_nuke(G, X, p, within) and not any(
        is_nuke(G, X & ~bit(v), p, within) for v in iter_bits(X)
    )


def best_hitting_vertex(
    G: Graph, Y: VertexSet, within: Optional[VertexSet] = None
) -> Tuple[int, int]:
    """Vertex maximizing |N(v) ∩ Y| (smallest id on ties) and that count."""
    if not Y:
        raise ValueError("best_hitting_vertex needs a non-empty target set")
    scope = G.vertices if within is None else within
    best_vertex, best_count = -1, -1
    for v in iter_bits(scope):
        count = popcount(G.adjacency[v] & Y)
        if count > best_count:
            best_vertex, best_count = v, count
    return best_vertex, best_count
