"""Shared test fixtures."""

import numpy as np
import pytest

from tests.unit.fakes import RecordingWcs
from wcs_workbench.config import THREADS_ENV_VAR, RunConfig
from wcs_workbench.core.wcs.matrix_wcs import MATRIX_WCS
from wcs_workbench.core.wcs.power import PoweredWcs
from wcs_workbench.core.wcs.tamper import TamperedWcs


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def recording_wcs() -> RecordingWcs:
    """The base matrix system behind a call recorder."""
    return RecordingWcs(MATRIX_WCS)


@pytest.fixture
def tampered_base() -> TamperedWcs:
    return TamperedWcs(MATRIX_WCS)


@pytest.fixture
def tampered_square() -> TamperedWcs:
    return TamperedWcs(PoweredWcs(2))


@pytest.fixture
def small_config() -> RunConfig:
    """Budgets small enough for a whole suite to run in a unit test."""
    return RunConfig(max_dim=8, cutoff=2, powers=(1, 2), levels=2)


@pytest.fixture
def serial(monkeypatch: pytest.MonkeyPatch) -> None:
    """Run the worker pool inline."""
    monkeypatch.setenv(THREADS_ENV_VAR, "1")
