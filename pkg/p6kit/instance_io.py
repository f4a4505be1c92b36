"""Instance files and result records.

Instance grammar (line oriented, vertex ids 1..n)::

    c any comment
    p pfree <n> <m>
    v <i> <weight>      one per vertex, optional (default weight 1)
    e <u> <v>           one per edge

Internal ids are the external ids minus one.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .errors import (
    ClaimViolation,
    DuplicateEdge,
    IdOutOfRange,
    ParseError,
    SelfLoop,
)
from .core.solution import Solution, verify_solution
from .graph.core import Graph, WeightedGraph

logger = logging.getLogger(__name__)


def _integer(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


def parse_instance(text: str) -> WeightedGraph:
    """Parse the instance grammar into a weighted graph.

    Raises:
        ParseError: on a malformed line, a missing header or an edge count
            that disagrees with the header.
        DuplicateEdge, SelfLoop, IdOutOfRange: on the matching edge faults.
    """
    n: Optional[int] = None
    declared_edges = 0
    weights: List[int] = []
    seen_weights = set()
    edges = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == 'p':
            if n is not None:
                raise ParseError("second problem line", number)
            if len(parts) != 4 or parts[1] != 'pfree':
                raise ParseError(f"invalid problem line: {line}", number)
            n = _integer(parts[2], number)
            declared_edges = _integer(parts[3], number)
            if n < 0 or declared_edges < 0:
                raise ParseError("negative counts in problem line", number)
            weights = [1] * n
            continue
        if n is None:
            raise ParseError(f"{kind!r} line before the problem line", number)
        if kind == 'v':
            if len(parts) != 3:
                raise ParseError(f"invalid vertex line: {line}", number)
            vertex = _integer(parts[1], number)
            if not 1 <= vertex <= n:
                raise IdOutOfRange(f"vertex {vertex} outside 1..{n}", number)
            if vertex in seen_weights:
                raise ParseError(f"vertex {vertex} weighted twice", number)
            seen_weights.add(vertex)
            weights[vertex - 1] = _integer(parts[2], number)
        elif kind == 'e':
            if len(parts) != 3:
                raise ParseError(f"invalid edge line: {line}", number)
            u, v = _integer(parts[1], number), _integer(parts[2], number)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise IdOutOfRange(f"vertex {x} outside 1..{n}", number)
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}", number)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in edges:
                raise DuplicateEdge(f"edge {u} {v} listed twice", number)
            edges.add(key)
        else:
            raise ParseError(f"unknown line type {kind!r}", number)

    if n is None:
        raise ParseError("missing problem line")
    if len(edges) != declared_edges:
        raise ParseError(f"header declares {declared_edges} edges, found {len(edges)}")
    return WeightedGraph(Graph.from_edges(n, sorted(edges)), tuple(weights))


def format_instance(Gw: WeightedGraph, comment: Optional[str] = None) -> str:
    """Canonical text: header, every vertex weight, edges in sorted order."""
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    edges = Gw.graph.edges()
    lines.append(f"p pfree {Gw.n} {len(edges)}")
    lines.extend(f"v {v + 1} {w}" for v, w in enumerate(Gw.weights))
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_instance(path: Union[str, Path]) -> WeightedGraph:
    with open(path) as f:
        return parse_instance(f.read())


def write_instance(path: Union[str, Path], Gw: WeightedGraph, comment: Optional[str] = None) -> None:
    with open(path, 'w') as f:
        f.write(format_instance(Gw, comment))
    logger.debug("Wrote %d-vertex instance to %s", Gw.n, path)


@dataclass
class ResultRecord:
    """Solver outcome in the fixed result schema."""
    problem: str
    status: str
    weight: Optional[int] = None
    solution: List[int] = field(default_factory=list)
    stats: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_solution(
        cls,
        problem: str,
        Gw: WeightedGraph,
        solution: Optional[Solution],
        stats: Optional[Dict[str, Any]] = None,
    ) -> "ResultRecord":
        """Build a record, re-verifying an optimal solution first.

        Raises:
            ClaimViolation: if the solution fails its predicate.
        """
        if solution is None:
            return cls(problem, "no-solution", stats=stats or {})
        if not verify_solution(Gw, solution, problem):
            raise ClaimViolation(
                "fail-closed", f"{problem} solution {solution.vertices} does not verify"
            )
        return cls(
            problem,
            "optimal",
            solution.weight,
            [v + 1 for v in solution.vertices],
            stats or {},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "problem": self.problem,
            "status": self.status,
            "weight": self.weight,
            "solution": list(self.solution),
            "stats": dict(self.stats),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), default=str)

    def to_text(self) -> str:
        lines = [
            f"problem: {self.problem}",
            f"status: {self.status}",
            f"weight: {'-' if self.weight is None else self.weight}",
            f"solution: {' '.join(map(str, self.solution))}",
        ]
        lines.extend(f"stats.{key}: {value}" for key, value in self.stats.items())
        return "\n".join(lines)
