"""Exception hierarchy for p6kit.

Every error carries the process exit code used by the command-line tools.
"""

from typing import Optional


class P6KitError(Exception):
    """Base class for all p6kit errors."""

    exit_code = 1


class ParseError(P6KitError):
    """Malformed instance file."""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEdge(ParseError):
    """The same undirected edge appears twice."""


class SelfLoop(ParseError):
    """An edge joins a vertex to itself."""


class IdOutOfRange(ParseError):
    """A vertex id lies outside 1..n."""


class BudgetExceeded(P6KitError):
    """A node budget was exhausted before the computation finished."""

    exit_code = 3


class PatternBudgetExceeded(BudgetExceeded):
    """Induced-pattern search ran out of extensions."""


class LimitExceeded(P6KitError):
    """Input is larger than a brute-force oracle accepts."""

    exit_code = 3


class StructureViolation(P6KitError):
    """A structural guarantee failed (broken clique tree, non-PMC bag, ...)."""

    exit_code = 4


class NotP6Free(StructureViolation):
    """A guarantee that holds only on P6-free graphs failed."""


class CentralBagNotFound(StructureViolation):
    """No bag of the clique tree satisfies the balance condition."""


class ClaimViolation(StructureViolation, AssertionError):
    """A runtime claim or a counterexample property does not hold."""

    def __init__(self, claim: str, detail: str = "") -> None:
        self.claim = claim
        super().__init__(f"{claim}: {detail}" if detail else claim)


class PreconditionViolation(StructureViolation, ValueError):
    """An operation was called on input outside its contract."""


class GenerationFailed(P6KitError):
    """A generator could not produce a verified instance."""

    exit_code = 5
