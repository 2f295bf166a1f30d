"""Check reports produced by every verification routine."""

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from wcs_workbench.config import MAX_REPORTED_FAILURES


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one exhaustive identity check.

    ``passed`` holds iff ``max_deviation`` is within tolerance and no instance
    failed. ``failures`` lists at most MAX_REPORTED_FAILURES descriptions,
    ``failure_count`` is exact.
    """

    name: str
    instances: int
    max_deviation: float
    passed: bool
    failures: tuple[str, ...] = ()
    failure_count: int = 0
    statement: str = ""
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "statement": self.statement,
            "instances": self.instances,
            "max_deviation": self.max_deviation,
            "pass": self.passed,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CheckReport":
        return cls(
            name=data["name"],
            instances=int(data["instances"]),
            max_deviation=float(data["max_deviation"]),
            passed=bool(data["pass"]),
            failures=tuple(data.get("failures", ())),
            failure_count=int(data.get("failure_count", len(data.get("failures", ())))),
            statement=data.get("statement", ""),
            note=data.get("note", ""),
        )


@dataclass
class Tally:
    """Mutable accumulator turned into a CheckReport once a check finishes."""

    name: str
    tolerance: float
    statement: str = ""
    note: str = ""
    instances: int = 0
    max_deviation: float = 0.0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0

    def record(self, label: str, deviation: float) -> None:
        self.record_lazy(deviation, lambda: label)

    def record_many(self, deviations: Sequence[float], label: Callable[[int], str]) -> None:
        """Record a batch; ``label(k)`` is only built for failing entries."""
        for k, deviation in enumerate(deviations):
            self.record_lazy(deviation, lambda k=k: label(k))

    def record_lazy(self, deviation: float, label: Callable[[], str]) -> None:
        self.instances += 1
        deviation = float(deviation)
        if not math.isfinite(deviation):
            deviation = math.inf
        self.max_deviation = max(self.max_deviation, deviation)
        if not deviation <= self.tolerance:
            self.fail(f"{label()}: deviation {deviation:.3g}", counted=False)

    def record_exact(self, label: str, *, holds: bool) -> None:
        """Record an identity decided in integer arithmetic (deviation 0 or a failure)."""
        if holds:
            self.instances += 1
        else:
            # Distinct permutation unitaries differ by 1 in some entry.
            self.max_deviation = max(self.max_deviation, 1.0)
            self.fail(f"{label}: permutations differ")

    def fail(self, description: str, *, counted: bool = True) -> None:
        """Register a failing instance. Structural failures count as an instance."""
        if counted:
            self.instances += 1
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(description)

    def report(self) -> CheckReport:
        return CheckReport(
            name=self.name,
            instances=self.instances,
            max_deviation=self.max_deviation,
            passed=self.max_deviation <= self.tolerance and self.failure_count == 0,
            failures=tuple(self.failures),
            failure_count=self.failure_count,
            statement=self.statement,
            note=self.note,
        )


def merge_reports(
    name: str,
    reports: Iterable[CheckReport],
    *,
    statement: str = "",
    note: str = "",
) -> CheckReport:
    """Fold per-instance reports of one family into a single suite report."""
    instances = 0
    max_deviation = 0.0
    failures: list[str] = []
    failure_count = 0
    passed = True
    for r in reports:
        instances += r.instances
        max_deviation = max(max_deviation, r.max_deviation)
        failure_count += r.failure_count
        passed = passed and r.passed
        for f in r.failures:
            if len(failures) < MAX_REPORTED_FAILURES:
                failures.append(f"{r.name}: {f}")
    return CheckReport(
        name=name,
        instances=instances,
        max_deviation=max_deviation,
        passed=passed,
        failures=tuple(failures),
        failure_count=failure_count,
        statement=statement,
        note=note,
    )


@dataclass(frozen=True)
class SuiteReport:
    """All family reports of one CLI suite, in enumeration order."""

    suite: str
    reports: tuple[CheckReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def instances(self) -> int:
        return sum(r.instances for r in self.reports)

    def failing(self) -> tuple[CheckReport, ...]:
        return tuple(r for r in self.reports if not r.passed)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "instances": self.instances,
            "reports": [r.to_dict() for r in self.reports],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SuiteReport":
        return cls(
            suite=data["suite"],
            reports=tuple(CheckReport.from_dict(r) for r in data.get("reports", ())),
        )
