"""
Defaults for search budgets and sizes, with environment overrides.

SPHERELAB_BUDGET overrides every node budget. SPHERELAB_SLOW=1 turns on the
exhaustive sweeps in the test suite.
"""

from __future__ import annotations

import os
from typing import Optional

DEFAULT_NODE_BUDGET = 1_000_000
DEFAULT_AUT_VERTEX_BOUND = 64
DEFAULT_MAP_SOURCE_BOUND = 12
DEFAULT_MAP_BUDGET = 100_000
DEFAULT_RANK2_DEPTH = 6
DEFAULT_SEED = 0

BUDGET_ENV = "SPHERELAB_BUDGET"
SLOW_ENV = "SPHERELAB_SLOW"


def node_budget(override: Optional[int] = None) -> int:
    """Resolve a search budget: explicit value, then environment, then default."""
    if override is not None:
        if override <= 0:
            raise ValueError("budget must be positive")
        return override
    raw = os.environ.get(BUDGET_ENV, "").strip()
    if raw:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
        if value > 0:
            return value
    return DEFAULT_NODE_BUDGET


def slow_checks_enabled() -> bool:
    return os.environ.get(SLOW_ENV, "") in {"1", "true", "yes"}
