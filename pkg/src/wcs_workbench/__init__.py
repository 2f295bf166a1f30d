"""Verification workbench for the weakly coassociative system of matrix algebras."""

from wcs_workbench.config import RunConfig
from wcs_workbench.core.states.certificate import build_obstruction_certificate
from wcs_workbench.core.wcs.matrix_wcs import MATRIX_WCS, MatrixWcs
from wcs_workbench.core.wcs.power import PoweredWcs
from wcs_workbench.errors import BudgetExceededError, CertificateRefusedError
from wcs_workbench.models.report import CheckReport, SuiteReport
from wcs_workbench.models.states import ObstructionCertificate, ProductStateDesc
from wcs_workbench.protocols import WcsProtocol

__all__ = [
    "MATRIX_WCS",
    "BudgetExceededError",
    "CertificateRefusedError",
    "CheckReport",
    "MatrixWcs",
    "ObstructionCertificate",
    "PoweredWcs",
    "ProductStateDesc",
    "RunConfig",
    "SuiteReport",
    "WcsProtocol",
    "build_obstruction_certificate",
]
