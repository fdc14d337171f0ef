"""Element budgets, overridable through the GMPA_BUDGET environment variable."""

from __future__ import annotations

import os

DEFAULT_ELEMENT_CAP = 4096

# Full triple enumeration is kept below this carrier size; above it the ring
# verifier switches to the exact generator-based reductions.
EXHAUSTIVE_TRIPLE_CAP = 256

DEFAULT_SEARCH_BUDGET = 2_000_000


def element_cap() -> int:
    """Largest carrier any single ring is allowed to materialize."""
    raw = os.environ.get("GMPA_BUDGET")
    if raw is None:
        return DEFAULT_ELEMENT_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"GMPA_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError("GMPA_BUDGET must be positive")
    return value
