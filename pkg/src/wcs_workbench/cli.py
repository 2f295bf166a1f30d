"""CLI for the WCS workbench (verification suites and the obstruction certificate)."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Annotated, Any

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from wcs_workbench.config import (
    DEFAULT_CUTOFF,
    DEFAULT_LEVELS,
    DEFAULT_MAX_DIM,
    DEFAULT_TOLERANCE,
    OutputFormat,
    RunConfig,
    resolve_thread_count,
)
from wcs_workbench.errors import BudgetExceededError, CertificateRefusedError
from wcs_workbench.logging_config import configure_logging
from wcs_workbench.models.report import CheckReport, SuiteReport
from wcs_workbench.models.states import ObstructionCertificate
from wcs_workbench.suites import (
    run_bialgebra_suite,
    run_certificate,
    run_power_suite,
    run_wcs_suite,
)

app = typer.Typer(help="Exhaustive checks on the weakly coassociative system of matrix algebras.")

MaxDimOption = Annotated[
    int, typer.Option("--max-dim", "-m", help="Largest composite dimension any check may touch")
]
CutoffOption = Annotated[
    int, typer.Option("--cutoff", "-N", help="Keep blocks 1..N of the graded algebras")
]
PowersOption = Annotated[
    list[int] | None,
    typer.Option("--powers", "-p", help="Tensor power to check (repeatable, default 1 and 2)"),
]
ToleranceOption = Annotated[
    float, typer.Option("--tolerance", "-t", help="Entrywise sup-norm tolerance")
]
FormatOption = Annotated[OutputFormat, typer.Option("--format", "-f", help="Report format")]
OutputOption = Annotated[
    Path | None, typer.Option("--output", "-o", help="Write the report here instead of stdout")
]
TamperOption = Annotated[
    bool,
    typer.Option("--selftest-tamper", hidden=True, help="Corrupt one R-matrix block"),
]


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    configure_logging(verbose=verbose)


def _make_config(powers: list[int] | None, **fields: Any) -> RunConfig:
    """Validate flags into a RunConfig; invalid values are usage errors (exit 2)."""
    try:
        threads = resolve_thread_count()
        config = RunConfig(powers=tuple(powers), **fields) if powers else RunConfig(**fields)
    except ValueError as exc:
        raise typer.BadParameter(str(exc)) from exc
    logger.debug("Running with {} worker thread(s)", threads)
    return config


def _console(handle: Any = None) -> Console:
    if handle is None:
        return Console(width=120)
    return Console(file=handle, width=120, no_color=True)


def _write(config: RunConfig, payload: dict[str, Any], render: Callable[[Console], None]) -> None:
    if config.format is OutputFormat.JSON:
        text = json.dumps(payload, indent=2)
        if config.output is None:
            typer.echo(text)
        else:
            config.output.write_text(text + "\n", encoding="utf-8")
    elif config.output is None:
        render(_console())
    else:
        with config.output.open("w", encoding="utf-8") as handle:
            render(_console(handle))
    if config.output is not None:
        logger.info("Report written to {}", config.output)


def _reports_table(title: str, reports: tuple[CheckReport, ...]) -> Table:
    table = Table(title=title)
    table.add_column("check")
    table.add_column("instances", justify="right")
    table.add_column("max deviation", justify="right")
    table.add_column("result")
    for r in reports:
        table.add_row(
            r.name,
            str(r.instances),
            f"{r.max_deviation:.3g}",
            "PASS" if r.passed else "FAIL",
        )
    return table


def _print_failures(console: Console, reports: tuple[CheckReport, ...]) -> None:
    for r in reports:
        if r.passed:
            continue
        console.print(f"{r.name}: {r.failure_count} failing instance(s)")
        console.print(f"  identity: {r.statement}", markup=False)
        for failure in r.failures:
            console.print(f"  - {failure}", markup=False)


def _render_suite(suite: SuiteReport) -> Callable[[Console], None]:
    def render(console: Console) -> None:
        console.print(_reports_table(suite.suite, suite.reports))
        _print_failures(console, suite.reports)
        outcome = "all checks pass" if suite.passed else "FAILED"
        console.print(f"{suite.suite}: {suite.instances} instances, {outcome}")

    return render


def _render_certificate(certificate: ObstructionCertificate) -> Callable[[Console], None]:
    def render(console: Console) -> None:
        console.print(_reports_table("stage quasi-cocommutativity", certificate.stage_reports))
        verdict = certificate.verdict
        console.print(
            f"star products: slot dimension {certificate.left.slot_dim}, "
            f"period deficits {list(verdict.period_deficits)}, "
            f"{'diverges' if verdict.diverges else 'converges'}"
        )
        levels = Table(title="finite levels")
        levels.add_column("level", justify="right")
        levels.add_column("dim", justify="right")
        levels.add_column("overlap", justify="right")
        levels.add_column("trace distance", justify="right")
        for d in certificate.diagnostics:
            levels.add_row(str(d.level), str(d.dim), f"{d.overlap:.3g}", f"{d.trace_distance:.6f}")
        console.print(levels)
        if certificate.oracle_report is not None:
            oracle = certificate.oracle_report
            console.print(
                f"{oracle.name}: {oracle.instances} values, "
                f"max deviation {oracle.max_deviation:.3g}"
            )
        for note in certificate.notes:
            console.print(f"note: {note}", markup=False)
        console.print(f"conclusion: {certificate.conclusion}")

    return render


def _run_suite(config: RunConfig, runner: Callable[[RunConfig], SuiteReport]) -> None:
    try:
        suite = runner(config)
    except BudgetExceededError as exc:
        raise typer.BadParameter(str(exc)) from exc
    _write(config, suite.to_dict(), _render_suite(suite))
    if not suite.passed:
        failing = ", ".join(r.name for r in suite.failing())
        logger.error("{} failed: {}", suite.suite, failing)
        raise typer.Exit(1)


@app.command(name="verify-wcs")
def verify_wcs(
    max_dim: MaxDimOption = DEFAULT_MAX_DIM,
    tolerance: ToleranceOption = DEFAULT_TOLERANCE,
    output_format: FormatOption = OutputFormat.TEXT,
    output: OutputOption = None,
    tamper: TamperOption = False,
) -> None:
    """Verify the axioms, R-relation, hexagons and triangularity of the base system."""
    config = _make_config(
        None,
        max_dim=max_dim,
        tolerance=tolerance,
        format=output_format,
        output=output,
        tamper=tamper,
    )
    _run_suite(config, run_wcs_suite)


@app.command(name="verify-power")
def verify_power(
    max_dim: MaxDimOption = DEFAULT_MAX_DIM,
    powers: PowersOption = None,
    tolerance: ToleranceOption = DEFAULT_TOLERANCE,
    output_format: FormatOption = OutputFormat.TEXT,
    output: OutputOption = None,
    tamper: TamperOption = False,
) -> None:
    """Verify the tensor-power systems and their compatibility with the stage embeddings."""
    config = _make_config(
        powers,
        max_dim=max_dim,
        tolerance=tolerance,
        format=output_format,
        output=output,
        tamper=tamper,
    )
    _run_suite(config, run_power_suite)


@app.command(name="verify-bialgebra")
def verify_bialgebra(
    max_dim: MaxDimOption = DEFAULT_MAX_DIM,
    cutoff: CutoffOption = DEFAULT_CUTOFF,
    powers: PowersOption = None,
    tolerance: ToleranceOption = DEFAULT_TOLERANCE,
    output_format: FormatOption = OutputFormat.TEXT,
    output: OutputOption = None,
    tamper: TamperOption = False,
) -> None:
    """Verify the truncated graded bialgebras and the ψ_* morphisms between stages."""
    config = _make_config(
        powers,
        max_dim=max_dim,
        cutoff=cutoff,
        tolerance=tolerance,
        format=output_format,
        output=output,
        tamper=tamper,
    )
    _run_suite(config, run_bialgebra_suite)


@app.command()
def certificate(
    max_dim: MaxDimOption = DEFAULT_MAX_DIM,
    cutoff: CutoffOption = DEFAULT_CUTOFF,
    stages: Annotated[
        list[int] | None,
        typer.Option(
            "--stages", "--powers", "-p", help="Stage to check (repeatable, default 1 and 2)"
        ),
    ] = None,
    levels: Annotated[
        int, typer.Option("--levels", "-l", help="Finite levels in the diagnostics")
    ] = DEFAULT_LEVELS,
    tolerance: ToleranceOption = DEFAULT_TOLERANCE,
    output_format: FormatOption = OutputFormat.TEXT,
    output: OutputOption = None,
    tamper: TamperOption = False,
) -> None:
    """Emit the certificate that the limit of the stages is not quasi-cocommutative."""
    config = _make_config(
        stages,
        max_dim=max_dim,
        cutoff=cutoff,
        levels=levels,
        tolerance=tolerance,
        format=output_format,
        output=output,
        tamper=tamper,
    )
    try:
        result = run_certificate(config)
    except BudgetExceededError as exc:
        raise typer.BadParameter(str(exc)) from exc
    except CertificateRefusedError as exc:
        payload = {
            "conclusion": None,
            "refused": exc.reason,
            "reports": [r.to_dict() for r in exc.reports],
        }

        def render(console: Console) -> None:
            console.print(f"certificate refused: {exc.reason}", markup=False)
            _print_failures(console, exc.reports)

        _write(config, payload, render)
        raise typer.Exit(1) from exc
    _write(config, result.to_dict(), _render_certificate(result))
