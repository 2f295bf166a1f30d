"""Suite runners behind the CLI subcommands.

A suite enumerates every instance whose composite dimension stays within both
the family's bound and the configured ``max_dim``, runs the instances on the
worker pool and folds them into one report per family. Instances are
enumerated by increasing product, then lexicographically, so reports are
stable for a fixed configuration.
"""

from collections.abc import Callable, Sequence
from functools import partial

from loguru import logger

from wcs_workbench.config import (
    COMULTIPLICATION_HOMOMORPHISM_CUTOFF,
    HOMOMORPHISM_BOUND,
    PAIR_BOUND,
    POWER_PERMUTATION_BOUND,
    POWER_SWEEP_BOUND,
    POWER_TRIPLE_BOUND,
    PSI_BOUND,
    TRIPLE_BOUND,
    UNIT_CONDITION_BOUND,
    RunConfig,
)
from wcs_workbench.core.bialgebra.checks import (
    check_bialgebra_morphism,
    check_coassociativity_graded,
    check_comultiplication_homomorphism,
    check_counit_law,
    check_quasi_cocommutativity,
    psi_star,
)
from wcs_workbench.core.bialgebra.graded import stage_cutoff
from wcs_workbench.core.states.certificate import build_obstruction_certificate
from wcs_workbench.core.verification import parallel_map
from wcs_workbench.core.wcs import matrix_wcs, power
from wcs_workbench.core.wcs.matrix_wcs import MATRIX_WCS, divisor_pairs, divisor_triples
from wcs_workbench.core.wcs.power import PoweredWcs
from wcs_workbench.core.wcs.tamper import TamperedWcs
from wcs_workbench.models.report import CheckReport, SuiteReport, merge_reports
from wcs_workbench.models.states import ObstructionCertificate
from wcs_workbench.protocols import WcsFactory, WcsProtocol

Instance = tuple[int, ...]


def pairs_within(bound: int, exponent: int = 1) -> list[tuple[int, int]]:
    """All ``(a, b)`` with ``(ab)^exponent <= bound``."""
    out: list[tuple[int, int]] = []
    p = 1
    while p**exponent <= bound:
        out.extend(divisor_pairs(p))
        p += 1
    return out


def triples_within(bound: int, exponent: int = 1) -> list[tuple[int, int, int]]:
    """All ``(a, b, c)`` with ``(abc)^exponent <= bound``."""
    out: list[tuple[int, int, int]] = []
    p = 1
    while p**exponent <= bound:
        out.extend(divisor_triples(p))
        p += 1
    return out


def _family(
    name: str,
    instances: Sequence[Instance],
    check: Callable[..., CheckReport],
) -> CheckReport:
    reports = parallel_map(lambda args: check(*args), instances)
    statement = reports[0].statement if reports else ""
    note = reports[0].note if reports else ""
    report = merge_reports(name, reports, statement=statement, note=note)
    logger.info(
        "{}: {} over {} instances",
        name,
        "pass" if report.passed else "FAIL",
        len(instances),
    )
    return report


def _tampered_power(n: int) -> WcsProtocol:
    return TamperedWcs(PoweredWcs(n))


def system_factory(config: RunConfig) -> WcsFactory:
    """Powered systems, with the corrupted R-block when the config asks for it."""
    return _tampered_power if config.tamper else PoweredWcs


def run_wcs_suite(config: RunConfig, wcs: WcsProtocol | None = None) -> SuiteReport:
    """Axioms, R-relation, hexagons, triangularity and φ homomorphism of the base system."""
    if wcs is None:
        wcs = TamperedWcs(MATRIX_WCS) if config.tamper else MATRIX_WCS
    max_dim, tolerance = config.max_dim, config.tolerance
    triples = triples_within(min(TRIPLE_BOUND, max_dim))
    pairs = pairs_within(min(PAIR_BOUND, max_dim))

    reports = [
        _family(
            "weak coassociativity",
            triples,
            partial(
                matrix_wcs.check_weak_coassociativity,
                wcs=wcs,
                max_dim=max_dim,
                tolerance=tolerance,
            ),
        ),
        _family(
            "unit conditions",
            [(a,) for a in range(1, min(UNIT_CONDITION_BOUND, max_dim) + 1)],
            partial(
                matrix_wcs.check_unit_conditions, wcs=wcs, max_dim=max_dim, tolerance=tolerance
            ),
        ),
        _family(
            "R-relation",
            pairs,
            partial(matrix_wcs.check_r_relation, wcs=wcs, max_dim=max_dim, tolerance=tolerance),
        ),
        _family(
            "hexagons",
            triples,
            partial(
                matrix_wcs.check_quasi_triangularity,
                wcs=wcs,
                max_dim=max_dim,
                tolerance=tolerance,
            ),
        ),
        _family(
            "triangularity",
            pairs,
            partial(matrix_wcs.check_triangularity, wcs=wcs, max_dim=max_dim, tolerance=tolerance),
        ),
        _family(
            "φ homomorphism",
            pairs_within(min(HOMOMORPHISM_BOUND, max_dim)),
            partial(
                matrix_wcs.check_phi_homomorphism, wcs=wcs, max_dim=max_dim, tolerance=tolerance
            ),
        ),
    ]
    return SuiteReport(suite="verify-wcs", reports=tuple(reports))


def _power_families(
    n: int, system: WcsProtocol, max_dim: int, tolerance: float
) -> list[CheckReport]:
    def cap(bound: int) -> int:
        return min(bound, max_dim)

    reports: list[CheckReport] = []
    if n == 1:
        reports.append(
            _family(
                "first power consistency",
                pairs_within(cap(PAIR_BOUND)),
                partial(
                    power.check_first_power_consistency, max_dim=max_dim, tolerance=tolerance
                ),
            )
        )
    triples = triples_within(cap(POWER_TRIPLE_BOUND), n)
    reports += [
        _family(
            f"interleave-flip identity n={n}",
            pairs_within(cap(POWER_PERMUTATION_BOUND), n),
            partial(
                power.check_interleave_flip_identity, n=n, max_dim=max_dim, tolerance=tolerance
            ),
        ),
        _family(
            f"op compatibility n={n}",
            pairs_within(cap(POWER_SWEEP_BOUND), n),
            partial(power.check_op_compatibility, n=n, max_dim=max_dim, tolerance=tolerance),
        ),
        _family(
            f"powered R-relation n={n}",
            pairs_within(cap(POWER_SWEEP_BOUND), n),
            partial(
                power.check_powered_r_relation,
                n=n,
                wcs=system,
                max_dim=max_dim,
                tolerance=tolerance,
            ),
        ),
        _family(
            f"powered hexagons and triangularity n={n}",
            triples,
            partial(
                power.check_powered_triangularity,
                n=n,
                wcs=system,
                max_dim=max_dim,
                tolerance=tolerance,
            ),
        ),
        _family(
            f"powered weak coassociativity n={n}",
            triples,
            partial(
                power.check_powered_coassociativity,
                n=n,
                wcs=system,
                max_dim=max_dim,
                tolerance=tolerance,
            ),
        ),
        _family(
            f"ψ compatibility n={n}",
            pairs_within(cap(PSI_BOUND), n + 1),
            partial(power.check_psi_compatibility, n=n, max_dim=max_dim, tolerance=tolerance),
        ),
    ]
    return reports


def run_power_suite(config: RunConfig, wcs_factory: WcsFactory | None = None) -> SuiteReport:
    """Powered structure maps for every configured power, plus ψ compatibility."""
    factory = wcs_factory if wcs_factory is not None else system_factory(config)
    reports: list[CheckReport] = []
    for n in config.powers:
        reports += _power_families(n, factory(n), config.max_dim, config.tolerance)
    return SuiteReport(suite="verify-power", reports=tuple(reports))


def homomorphism_cutoff(cutoff: int, stage: int, max_dim: int) -> int:
    """Blocks covered by the Δ homomorphism check, whose cost grows with the fourth power."""
    bounded = stage_cutoff(cutoff, stage, min(max_dim, HOMOMORPHISM_BOUND))
    return min(bounded, COMULTIPLICATION_HOMOMORPHISM_CUTOFF)


def run_bialgebra_suite(
    config: RunConfig, wcs_factory: WcsFactory | None = None
) -> SuiteReport:
    """Truncated graded bialgebra of every configured stage and the ψ_* morphisms."""
    factory = wcs_factory if wcs_factory is not None else system_factory(config)
    max_dim, tolerance = config.max_dim, config.tolerance

    reports: list[CheckReport] = []
    for i in config.powers:
        system = factory(i)
        n = stage_cutoff(config.cutoff, i, max_dim)
        logger.info("Stage {}: blocks 1..{}", i, n)
        reports += [
            check_coassociativity_graded(n, i, wcs=system, max_dim=max_dim, tolerance=tolerance),
            check_quasi_cocommutativity(n, i, wcs=system, max_dim=max_dim, tolerance=tolerance),
            check_counit_law(i, wcs=system, tolerance=tolerance),
            check_comultiplication_homomorphism(
                homomorphism_cutoff(config.cutoff, i, max_dim),
                i,
                wcs=system,
                max_dim=max_dim,
                tolerance=tolerance,
            ),
            check_bialgebra_morphism(
                psi_star(i, stage_cutoff(config.cutoff, i + 1, max_dim)),
                source=system,
                target=factory(i + 1),
                max_dim=max_dim,
                tolerance=tolerance,
            ),
        ]
    for report in reports:
        logger.info("{}: {}", report.name, "pass" if report.passed else "FAIL")
    return SuiteReport(suite="verify-bialgebra", reports=tuple(reports))


def run_certificate(
    config: RunConfig, wcs_factory: WcsFactory | None = None
) -> ObstructionCertificate:
    """Build the certificate over the configured stage powers.

    Raises:
        CertificateRefusedError: Propagated from the builder.
    """
    factory = wcs_factory if wcs_factory is not None else system_factory(config)
    return build_obstruction_certificate(
        config.powers,
        config.cutoff,
        config.levels,
        max_dim=config.max_dim,
        tolerance=config.tolerance,
        wcs_factory=factory,
    )

