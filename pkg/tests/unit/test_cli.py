"""Tests for the workbench CLI."""

import json
import sys
from collections.abc import Iterator
from pathlib import Path

import pytest
from loguru import logger
from typer.testing import CliRunner

from wcs_workbench.cli import app
from wcs_workbench.config import THREADS_ENV_VAR

runner = CliRunner()


@pytest.fixture(autouse=True)
def _restore_logging() -> Iterator[None]:
    """The CLI callback rebinds loguru to the runner's stderr; undo that afterwards."""
    yield
    logger.remove()
    logger.add(sys.stderr)


def test_verify_wcs_passes() -> None:
    result = runner.invoke(app, ["verify-wcs", "--max-dim", "8"])
    assert result.exit_code == 0, result.output
    assert "verify-wcs:" in result.stdout
    assert "all checks pass" in result.stdout


def test_verify_wcs_trivial_budget() -> None:
    result = runner.invoke(app, ["verify-wcs", "--max-dim", "1"])
    assert result.exit_code == 0, result.output


def test_verify_wcs_tampered_fails() -> None:
    result = runner.invoke(app, ["verify-wcs", "--max-dim", "8", "--selftest-tamper"])
    assert result.exit_code == 1
    assert "FAIL" in result.stdout
    assert "R-relation (2,2)" in result.stdout


def test_verify_wcs_rejects_bad_budget() -> None:
    result = runner.invoke(app, ["verify-wcs", "--max-dim", "0"])
    assert result.exit_code == 2


def test_verify_wcs_json() -> None:
    result = runner.invoke(app, ["verify-wcs", "-m", "4", "--format", "json"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["suite"] == "verify-wcs"
    assert data["pass"] is True
    assert [r["name"] for r in data["reports"]][0] == "weak coassociativity"


def test_verify_power_first_power() -> None:
    result = runner.invoke(app, ["verify-power", "--powers", "1", "--max-dim", "16"])
    assert result.exit_code == 0, result.output
    assert "first power consistency" in result.stdout


def test_verify_power_rejects_zero_power() -> None:
    result = runner.invoke(app, ["verify-power", "--powers", "0"])
    assert result.exit_code == 2


def test_verify_bialgebra_small() -> None:
    result = runner.invoke(
        app, ["verify-bialgebra", "--max-dim", "8", "--cutoff", "2", "-f", "json"]
    )
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["suite"] == "verify-bialgebra"
    assert data["instances"] > 0


def test_certificate_json() -> None:
    result = runner.invoke(
        app, ["certificate", "--stages", "1", "--cutoff", "1", "--levels", "2", "-f", "json"]
    )
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["conclusion"] == "NotQuasiCocommutative"
    assert data["verdict"]["period_deficits"] == [1.0]


def test_certificate_text() -> None:
    result = runner.invoke(app, ["certificate", "-p", "1", "-p", "2", "-N", "2", "-l", "2"])
    assert result.exit_code == 0, result.output
    assert "conclusion: NotQuasiCocommutative" in result.stdout


def test_certificate_refuses_tampered_stage() -> None:
    result = runner.invoke(
        app, ["certificate", "--stages", "1", "--cutoff", "4", "--selftest-tamper"]
    )
    assert result.exit_code == 1
    assert "certificate refused" in result.stdout


def test_certificate_refusal_as_json() -> None:
    result = runner.invoke(
        app,
        ["certificate", "-p", "1", "-N", "4", "--selftest-tamper", "--format", "json"],
    )
    assert result.exit_code == 1
    data = json.loads(result.stdout)
    assert data["conclusion"] is None
    assert data["refused"].startswith("stage quasi-cocommutativity failed")


def test_certificate_level_budget_is_a_usage_error() -> None:
    result = runner.invoke(app, ["certificate", "--stages", "1", "--cutoff", "1", "--levels", "9"])
    assert result.exit_code == 2


def test_output_file(tmp_path: Path) -> None:
    target = tmp_path / "report.json"
    result = runner.invoke(
        app, ["verify-wcs", "-m", "2", "--format", "json", "--output", str(target)]
    )
    assert result.exit_code == 0, result.output
    assert result.stdout == ""
    assert json.loads(target.read_text(encoding="utf-8"))["pass"] is True


def test_text_output_file(tmp_path: Path) -> None:
    target = tmp_path / "report.txt"
    result = runner.invoke(app, ["verify-wcs", "-m", "2", "-o", str(target)])
    assert result.exit_code == 0, result.output
    assert "all checks pass" in target.read_text(encoding="utf-8")


def test_verbose_flag_is_accepted() -> None:
    result = runner.invoke(app, ["--verbose", "verify-wcs", "-m", "1"])
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize("threads", ["many", "0"])
def test_bad_thread_count_is_a_usage_error(monkeypatch: pytest.MonkeyPatch, threads: str) -> None:
    monkeypatch.setenv(THREADS_ENV_VAR, threads)
    result = runner.invoke(app, ["verify-wcs", "-m", "1"])
    assert result.exit_code == 2
    assert THREADS_ENV_VAR in result.output
