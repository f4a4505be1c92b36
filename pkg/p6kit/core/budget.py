"""Node budgets for the branching procedures."""

import logging
from dataclasses import dataclass
from typing import Optional

from ..errors import BudgetExceeded

logger = logging.getLogger(__name__)


@dataclass
class BudgetConfig:
    """Budget configuration for a single solve."""
    limit: Optional[int] = None
    warning_threshold: float = 0.8  # fraction of the limit


class NodeBudget:
    """Counts branching nodes against an optional limit."""

    def __init__(self, label: str, config: Optional[BudgetConfig] = None) -> None:
        self.label = label
        self.config = config or BudgetConfig()
        self.used = 0
        self._warned = False

    @classmethod
    def of(cls, label: str, limit: Optional[int]) -> "NodeBudget":
        return cls(label, BudgetConfig(limit=limit))

    @property
    def remaining(self) -> Optional[int]:
        if self.config.limit is None:
            return None
        return max(self.config.limit - self.used, 0)

    def charge(self, amount: int = 1) -> None:
        """Consume ``amount`` nodes.

        Raises:
            BudgetExceeded: once more than ``limit`` nodes have been charged.
        """
        self.used += amount
        limit = self.config.limit
        if limit is None:
            return
        if self.used > limit:
            raise BudgetExceeded(f"{self.label}: node budget of {limit} exhausted")
        if not self._warned and self.used >= self.config.warning_threshold * limit:
            self._warned = True
            logger.warning(
                "%s: %.0f%% of the %d-node budget used",
                self.label, 100 * self.used / limit, limit,
            )
