"""Resource guards for the enumerative operations.

Everything in this package is desk scale by design: diagrams, permutations and
cell tables are enumerated exhaustively. The guards below keep a mistyped size
from turning into an unbounded computation. The CAUCHON_GUARD environment
variable (an integer, interpreted as the maximum allowed m*p) raises or lowers
the ceiling for a whole process; individual call sites may also pass explicit
limits.
"""

from __future__ import annotations

import os

from .errors import ResourceGuardError

DEFAULT_CELL_LIMIT = 16
EXACT_FAMILY_LIMIT = 12

GUARD_ENV_VAR = "CAUCHON_GUARD"


def cell_limit(default: int = DEFAULT_CELL_LIMIT) -> int:
    """Maximum m*p allowed for exhaustive enumeration."""
    raw = os.environ.get(GUARD_ENV_VAR)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ResourceGuardError(
            f"{GUARD_ENV_VAR} must be an integer, got {raw!r}"
        ) from exc
    if value < 1:
        raise ResourceGuardError(f"{GUARD_ENV_VAR} must be positive, got {value}")
    return value


def ensure_enumerable(m: int, p: int, *, default: int = DEFAULT_CELL_LIMIT,
                      what: str = "enumeration") -> None:
    """Raise ResourceGuardError when an m x p grid exceeds the guard."""
    limit = cell_limit(default)
    if m * p > limit:
        raise ResourceGuardError(
            f"{what} for a {m}x{p} grid exceeds the guard (m*p = {m * p} > {limit}); "
            f"set {GUARD_ENV_VAR} to raise the limit"
        )
