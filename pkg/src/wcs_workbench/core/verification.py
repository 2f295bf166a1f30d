"""Exhaustive matrix-unit sweeps and the worker pool shared by all checkers.

Every identity the workbench verifies is linear in its argument, so agreement
on the matrix units ``E_{i,j}`` of ``M_d`` is agreement on all of ``M_d``.
Sweeps feed whole rows ``E_{r,1}, ..., E_{r,d}`` as a ``(d, d, d)`` stack.
"""

from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np
from loguru import logger

from wcs_workbench.config import resolve_thread_count
from wcs_workbench.core.tensor.algebra import ComplexMatrix
from wcs_workbench.models.report import CheckReport, Tally

T = TypeVar("T")
R = TypeVar("R")

StackMap = Callable[[ComplexMatrix], ComplexMatrix]

MATRIX_UNIT_NOTE = (
    "both sides are linear in x, so agreement on every matrix unit E_ij of the "
    "domain is agreement on the whole algebra"
)


def matrix_unit_row(d: int, row: int) -> ComplexMatrix:
    """Stack ``batch[k] = E_{row+1, k+1}`` of shape ``(d, d, d)``; ``row`` is 0-based."""
    batch = np.zeros((d, d, d), dtype=np.complex128)
    k = np.arange(d)
    batch[k, row, k] = 1
    return batch


def matrix_unit_rows(d: int) -> Iterator[tuple[int, ComplexMatrix]]:
    for row in range(d):
        yield row, matrix_unit_row(d, row)


def all_matrix_units(d: int) -> ComplexMatrix:
    """All ``d*d`` matrix units, unit ``E_{r+1,c+1}`` at position ``r*d + c``."""
    units = np.zeros((d * d, d, d), dtype=np.complex128)
    idx = np.arange(d * d)
    units[idx, idx // d, idx % d] = 1
    return units


def stack_deviation(left: ComplexMatrix, right: ComplexMatrix) -> np.ndarray:
    """Per-matrix entrywise sup-norm of ``left - right`` over a stack."""
    if left.shape != right.shape:
        msg = f"shape mismatch: {left.shape} vs {right.shape}"
        raise ValueError(msg)
    if left.shape[-1] == 0:
        return np.zeros(left.shape[:-2])
    return np.abs(left - right).max(axis=(-2, -1))


def sweep(
    tally: Tally,
    d: int,
    left: StackMap,
    right: StackMap,
    *,
    prefix: str = "",
) -> None:
    """Compare ``left(E)`` and ``right(E)`` for every matrix unit ``E`` of ``M_d``."""
    for row, batch in matrix_unit_rows(d):
        deviations = stack_deviation(left(batch), right(batch))
        tally.record_many(
            deviations.tolist(),
            lambda k, row=row: f"{prefix}E[{row + 1},{k + 1}]",
        )


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Ordered map over a thread pool sized by WCS_THREADS."""
    work: Sequence[T] = list(items)
    threads = resolve_thread_count()
    if threads == 1 or len(work) <= 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=min(threads, len(work))) as pool:
        return list(pool.map(fn, work))


def finish(tally: Tally) -> CheckReport:
    """Turn a tally into its report, logging the outcome."""
    report = tally.report()
    if report.passed:
        logger.debug(
            "{}: {} instances, max deviation {:.3g}",
            report.name,
            report.instances,
            report.max_deviation,
        )
    else:
        logger.warning(
            "{}: {} of {} instances failed, max deviation {:.3g}",
            report.name,
            report.failure_count,
            report.instances,
            report.max_deviation,
        )
    return report
