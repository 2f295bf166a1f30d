"""Configuration constants for the WCS workbench."""

import os
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

# Largest composite dimension a single check may touch.
DEFAULT_MAX_DIM: int = 64

# Truncation of the graded algebras: blocks a = 1..cutoff are kept.
DEFAULT_CUTOFF: int = 8

DEFAULT_POWERS: tuple[int, ...] = (1, 2)

# Entrywise sup-norm tolerance for dense comparisons and state deficits.
DEFAULT_TOLERANCE: float = 1e-12

# Finite levels inspected by the certificate diagnostics.
DEFAULT_LEVELS: int = 4

# Suite bounds. A suite enumerates instances whose composite dimension stays
# below both the bound and the configured max_dim.
UNIT_CONDITION_BOUND: int = 36
TRIPLE_BOUND: int = 24
PAIR_BOUND: int = 36
HOMOMORPHISM_BOUND: int = 12
POWER_PERMUTATION_BOUND: int = 81
POWER_SWEEP_BOUND: int = 36
POWER_TRIPLE_BOUND: int = 64
PSI_BOUND: int = 64
COMULTIPLICATION_HOMOMORPHISM_CUTOFF: int = 6

# Density matrices of product states are materialized up to this dimension.
MAX_STATE_DIM: int = 256

# Highest level at which the star product is re-derived through phi^(k).
ORACLE_MAX_LEVEL: int = 3

# Failures listed per report. Counts stay exact.
MAX_REPORTED_FAILURES: int = 50

THREADS_ENV_VAR: str = "WCS_THREADS"


def resolve_thread_count() -> int:
    """Return the worker count from WCS_THREADS, else a small CPU-based default."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            msg = f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
            raise ValueError(msg) from None
        if value < 1:
            msg = f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
            raise ValueError(msg)
        return value
    return min(4, os.cpu_count() or 1)


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by all CLI subcommands."""

    max_dim: int = DEFAULT_MAX_DIM
    cutoff: int = DEFAULT_CUTOFF
    powers: tuple[int, ...] = DEFAULT_POWERS
    tolerance: float = DEFAULT_TOLERANCE
    levels: int = DEFAULT_LEVELS
    output: Path | None = None
    format: OutputFormat = OutputFormat.TEXT
    tamper: bool = False

    def __post_init__(self) -> None:
        if self.max_dim < 1:
            msg = f"max_dim must be >= 1, got {self.max_dim}"
            raise ValueError(msg)
        if self.tolerance <= 0:
            msg = f"tolerance must be > 0, got {self.tolerance}"
            raise ValueError(msg)
        if self.cutoff < 1:
            msg = f"cutoff must be >= 1, got {self.cutoff}"
            raise ValueError(msg)
        if self.levels < 1:
            msg = f"levels must be >= 1, got {self.levels}"
            raise ValueError(msg)
        if not self.powers or any(p < 1 for p in self.powers):
            msg = f"powers must be a non-empty list of positive integers, got {self.powers!r}"
            raise ValueError(msg)
