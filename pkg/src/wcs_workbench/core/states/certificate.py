"""Assemble the certificate that the inductive limit is not quasi-cocommutative.

Each finite stage carries a universal R-matrix (checked exhaustively). If the
limit carried one too, composing representations with the comultiplication
would give equivalent results in either order. The star products of the two
diagonal states on ``M_2`` are inequivalent, so no such R-matrix exists.
"""

from collections.abc import Sequence

import numpy as np
from loguru import logger

from wcs_workbench.config import (
    DEFAULT_MAX_DIM,
    DEFAULT_TOLERANCE,
    ORACLE_MAX_LEVEL,
)
from wcs_workbench.core.bialgebra.checks import check_quasi_cocommutativity
from wcs_workbench.core.bialgebra.graded import stage_cutoff
from wcs_workbench.core.states.product import (
    diagonal_pure_state,
    equivalent,
    finite_level_state,
    level_diagnostics,
    star,
    star_oracle_values,
)
from wcs_workbench.core.verification import finish
from wcs_workbench.core.wcs.power import PoweredWcs
from wcs_workbench.errors import CertificateRefusedError
from wcs_workbench.models.report import CheckReport, Tally
from wcs_workbench.models.states import Conclusion, ObstructionCertificate, ProductStateDesc
from wcs_workbench.protocols import WcsFactory

CRITERION_NOTE = (
    "pure product states are equivalent iff sum_k (1 - |<xi_k, eta_k>|) converges; "
    "this criterion is imported, not re-derived"
)
CONTRAPOSITIVE_NOTE = (
    "a universal R-matrix on the limit would intertwine π_s ⋆ π_t with π_t ⋆ π_s; "
    "inequivalent star products rule it out"
)
PHASE_NOTE = (
    "well-definedness of ⋆ on equivalence classes is imported; "
    "invariance under slotwise phase changes is what the workbench checks"
)


def check_star_oracle(
    pairs: Sequence[tuple[ProductStateDesc, ProductStateDesc]],
    levels: int,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Compare the slot rule for ``star`` with direct evaluation through ``phi^{(k)}``."""
    tally = Tally(
        name="star product oracle",
        tolerance=tolerance,
        statement="ω_{s⋆t}(x) = (ω_s ⊗ ω_t)(φ^{(k)}(x)) on every matrix unit x",
        note="matrix units span M^{⊗k}, so values on them determine the state",
    )
    for index, (s, t) in enumerate(pairs, start=1):
        starred = star(s, t)
        for k in range(1, min(levels, ORACLE_MAX_LEVEL) + 1):
            direct = star_oracle_values(s, t, k)
            slot_rule = finite_level_state(starred, k).T
            tally.record(f"pair {index} level {k}", float(np.max(np.abs(direct - slot_rule))))
    return finish(tally)


def build_obstruction_certificate(
    stage_powers: Sequence[int],
    cutoff: int,
    levels: int,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
    wcs_factory: WcsFactory = PoweredWcs,
) -> ObstructionCertificate:
    """Run the stage checks and the state comparison; refuse unless every step holds.

    Raises:
        CertificateRefusedError: A stage check or the oracle failed, or the
            two star products turned out equivalent.
    """
    if not stage_powers:
        msg = "at least one stage power is required"
        raise ValueError(msg)
    if levels < 1:
        msg = f"levels must be >= 1, got {levels}"
        raise ValueError(msg)

    stage_reports: list[CheckReport] = []
    for power in stage_powers:
        n = stage_cutoff(cutoff, power, max_dim)
        logger.info("Stage {}: quasi-cocommutativity up to block {}", power, n)
        stage_reports.append(
            check_quasi_cocommutativity(
                n, power, wcs=wcs_factory(power), max_dim=max_dim, tolerance=tolerance
            )
        )
    failed = tuple(r for r in stage_reports if not r.passed)
    if failed:
        names = ", ".join(r.name for r in failed)
        logger.error("Certificate refused: stage check failed ({})", names)
        msg = f"stage quasi-cocommutativity failed: {names}"
        raise CertificateRefusedError(msg, failed)

    omega_1, omega_2 = diagonal_pure_state(2, 1), diagonal_pure_state(2, 2)
    left, right = star(omega_1, omega_2), star(omega_2, omega_1)
    verdict = equivalent(left, right, tolerance=tolerance)
    if verdict.equivalent:
        logger.error("Certificate refused: the two star products are equivalent")
        msg = "star products of the diagonal states are equivalent; no obstruction"
        raise CertificateRefusedError(msg, tuple(stage_reports))

    oracle = check_star_oracle(
        [(omega_1, omega_2), (omega_2, omega_1)], levels, tolerance=tolerance
    )
    if not oracle.passed:
        logger.error("Certificate refused: star product disagrees with φ^(k)")
        msg = "star product slot rule disagrees with direct evaluation"
        raise CertificateRefusedError(msg, (*stage_reports, oracle))

    certificate = ObstructionCertificate(
        stage_reports=tuple(stage_reports),
        left=left,
        right=right,
        verdict=verdict,
        conclusion=Conclusion.NOT_QUASI_COCOMMUTATIVE,
        diagnostics=level_diagnostics(left, right, levels),
        oracle_report=oracle,
        notes=(CRITERION_NOTE, CONTRAPOSITIVE_NOTE, PHASE_NOTE),
    )
    logger.info("Certificate emitted: {}", certificate.conclusion)
    return certificate
