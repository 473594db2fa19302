"""Shared exception types."""
from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of its node budget before reaching a verdict.

    Carries the statistics gathered so far; callers map this to the
    'inconclusive' exit path, never to a negative answer.
    """

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes
