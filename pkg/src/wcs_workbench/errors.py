"""Exceptions raised by the workbench."""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from wcs_workbench.models.report import CheckReport


class BudgetExceededError(ValueError):
    """A check was asked to work on a dimension above its budget."""

    def __init__(self, what: str, dim: int, budget: int) -> None:
        self.what = what
        self.dim = dim
        self.budget = budget
        super().__init__(f"{what}: dimension {dim} exceeds budget {budget}")


class CertificateRefusedError(RuntimeError):
    """The obstruction certificate could not be emitted."""

    def __init__(self, reason: str, reports: tuple["CheckReport", ...] = ()) -> None:
        self.reason = reason
        self.reports = reports
        super().__init__(reason)


def ensure_within_budget(what: str, dim: int, budget: int) -> None:
    if dim > budget:
        raise BudgetExceededError(what, dim, budget)
