"""Product-state descriptions and the obstruction certificate."""

from dataclasses import dataclass
from enum import StrEnum
from math import isclose
from typing import Any

import numpy as np
import numpy.typing as npt

from wcs_workbench.models.report import CheckReport

# Slot vectors must have unit norm up to this distance.
NORM_TOLERANCE: float = 1e-12


def _encode_complex(z: complex) -> list[float]:
    return [z.real, z.imag]


def _decode_complex(pair: list[float]) -> complex:
    re, im = pair
    return complex(re, im)


@dataclass(frozen=True)
class SlotVector:
    """Unit vector of one tensor slot; equality is exact on the entries."""

    entries: tuple[complex, ...]

    def __post_init__(self) -> None:
        entries = tuple(complex(z) for z in self.entries)
        if not entries:
            msg = "slot vector must have at least one entry"
            raise ValueError(msg)
        norm = float(np.linalg.norm(np.array(entries)))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            msg = f"slot vector must have unit norm, got {norm:.15g}"
            raise ValueError(msg)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def basis(cls, n: int, i: int) -> "SlotVector":
        """``e_i`` in ``C^n`` (1-based)."""
        if not 1 <= i <= n:
            msg = f"basis index {i} out of range 1..{n}"
            raise ValueError(msg)
        return cls(tuple(1.0 + 0j if k == i - 1 else 0j for k in range(n)))

    @classmethod
    def from_array(cls, v: npt.ArrayLike) -> "SlotVector":
        return cls(tuple(complex(z) for z in np.asarray(v).reshape(-1)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def as_array(self) -> npt.NDArray[np.complex128]:
        return np.array(self.entries, dtype=np.complex128)

    def to_list(self) -> list[list[float]]:
        return [_encode_complex(z) for z in self.entries]

    @classmethod
    def from_list(cls, data: list[list[float]]) -> "SlotVector":
        return cls(tuple(_decode_complex(pair) for pair in data))


def _primitive_period(period: tuple[SlotVector, ...]) -> tuple[SlotVector, ...]:
    p = len(period)
    for q in range(1, p + 1):
        if p % q == 0 and period == period[:q] * (p // q):
            return period[:q]
    return period


def canonical_parts(
    prefix: tuple[SlotVector, ...], period: tuple[SlotVector, ...]
) -> tuple[tuple[SlotVector, ...], tuple[SlotVector, ...]]:
    """Shortest prefix and primitive period describing the same slot sequence."""
    period = _primitive_period(period)
    prefix = tuple(prefix)
    # A prefix slot equal to the period's last slot is the start of one more period.
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1], *period[:-1])
    return prefix, period


@dataclass(frozen=True)
class ProductStateDesc:
    """Eventually periodic pure product state on ``M_n^{⊗∞}``.

    Slot ``k`` (1-based) carries ``prefix[k-1]`` while ``k <= len(prefix)`` and
    the period, repeated forever, afterwards. Instances are always stored in
    canonical form, so dataclass equality compares slot sequences.
    """

    slot_dim: int
    prefix: tuple[SlotVector, ...]
    period: tuple[SlotVector, ...]

    def __post_init__(self) -> None:
        if self.slot_dim < 1:
            msg = f"slot dimension must be >= 1, got {self.slot_dim}"
            raise ValueError(msg)
        if not self.period:
            msg = "period must contain at least one slot vector"
            raise ValueError(msg)
        for v in (*self.prefix, *self.period):
            if v.dim != self.slot_dim:
                msg = f"slot vector of dimension {v.dim} in a state on M_{self.slot_dim}"
                raise ValueError(msg)
        prefix, period = canonical_parts(tuple(self.prefix), tuple(self.period))
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def slot(self, k: int) -> SlotVector:
        if k < 1:
            msg = f"slots are numbered from 1, got {k}"
            raise ValueError(msg)
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.period[(k - 1 - len(self.prefix)) % len(self.period)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "slot_dim": self.slot_dim,
            "prefix": [v.to_list() for v in self.prefix],
            "period": [v.to_list() for v in self.period],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ProductStateDesc":
        return cls(
            slot_dim=int(data["slot_dim"]),
            prefix=tuple(SlotVector.from_list(v) for v in data.get("prefix", [])),
            period=tuple(SlotVector.from_list(v) for v in data["period"]),
        )


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of the product-state equivalence test.

    ``equivalent`` holds iff every period deficit is within tolerance; the
    deficit series then has finitely many non-zero terms. Otherwise it diverges.
    """

    equivalent: bool
    prefix_deficits: tuple[float, ...]
    period_deficits: tuple[float, ...]
    tolerance: float

    @property
    def prefix_deficit_sum(self) -> float:
        return float(sum(self.prefix_deficits))

    @property
    def diverges(self) -> bool:
        return not self.equivalent

    def to_dict(self) -> dict[str, Any]:
        return {
            "equivalent": self.equivalent,
            "diverges": self.diverges,
            "prefix_deficit_sum": self.prefix_deficit_sum,
            "prefix_deficits": list(self.prefix_deficits),
            "period_deficits": list(self.period_deficits),
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class LevelDiagnostic:
    """Comparison of two states restricted to the first ``level`` slots."""

    level: int
    dim: int
    overlap: float
    trace_distance: float

    @property
    def orthogonal(self) -> bool:
        return isclose(self.overlap, 0.0, abs_tol=NORM_TOLERANCE)

    def to_dict(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "dim": self.dim,
            "overlap": self.overlap,
            "trace_distance": self.trace_distance,
        }


class Conclusion(StrEnum):
    NOT_QUASI_COCOMMUTATIVE = "NotQuasiCocommutative"


@dataclass(frozen=True)
class ObstructionCertificate:
    """Evidence that the limit of quasi-cocommutative stages is not quasi-cocommutative.

    Every stage passes its quasi-cocommutativity check, yet the two star
    products of the diagonal states are inequivalent; a universal R-matrix on
    the limit would make them equivalent.
    """

    stage_reports: tuple[CheckReport, ...]
    left: ProductStateDesc
    right: ProductStateDesc
    verdict: EquivalenceVerdict
    conclusion: Conclusion
    diagnostics: tuple[LevelDiagnostic, ...] = ()
    oracle_report: CheckReport | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not all(r.passed for r in self.stage_reports) or self.verdict.equivalent:
            msg = "a certificate requires passing stages and inequivalent star products"
            raise ValueError(msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "stages": [r.to_dict() for r in self.stage_reports],
            "state_pair": {"left": self.left.to_dict(), "right": self.right.to_dict()},
            "verdict": self.verdict.to_dict(),
            "diagnostics": [d.to_dict() for d in self.diagnostics],
            "oracle": None if self.oracle_report is None else self.oracle_report.to_dict(),
            "notes": list(self.notes),
            "conclusion": str(self.conclusion),
        }
