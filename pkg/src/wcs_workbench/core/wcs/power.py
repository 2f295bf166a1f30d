"""Componentwise tensor powers of the matrix system and the stage embeddings.

Stage ``n`` has components ``M_a^{⊗n}`` (matrix size ``a^n``). Its structure
maps regroup ``n`` copies of the base maps with the interleave ``T_{a,b}``,
which moves ``x_1 ⊗ y_1 ⊗ ... ⊗ x_n ⊗ y_n``
to ``x_1 ⊗ ... ⊗ x_n ⊗ y_1 ⊗ ... ⊗ y_n``.
Consecutive stages are linked by ``psi(x) = x ⊗ I_a``.
"""

from dataclasses import replace
from functools import cache

from wcs_workbench.config import DEFAULT_MAX_DIM, DEFAULT_TOLERANCE
from wcs_workbench.core.tensor.algebra import ComplexMatrix, conjugate, flip, identity, kron
from wcs_workbench.core.tensor.permutation import (
    IndexPermutation,
    factor_permutation,
    flip_permutation,
)
from wcs_workbench.core.verification import MATRIX_UNIT_NOTE, finish, sweep
from wcs_workbench.core.wcs.matrix_wcs import (
    MATRIX_WCS,
    PERMUTATION_NOTE,
    apply_phi,
    apply_phi_op,
    check_quasi_triangularity,
    check_r_relation,
    check_triangularity,
    phi_basis,
    rmatrix,
)
from wcs_workbench.errors import ensure_within_budget
from wcs_workbench.models.report import CheckReport, Tally, merge_reports
from wcs_workbench.protocols import WcsProtocol


def _check_power(n: int) -> None:
    if n < 1:
        msg = f"tensor power must be >= 1, got {n}"
        raise ValueError(msg)


@cache
def interleave(a: int, b: int, n: int) -> IndexPermutation:
    """``T_{a,b}^{(n)}`` on radices ``(a, b, ..., a, b)``."""
    _check_power(n)
    sigma: list[int] = []
    for k in range(1, n + 1):
        sigma += [k, n + k]
    return factor_permutation((a, b) * n, sigma)


@cache
def phi_power_permutation(a: int, b: int, n: int) -> IndexPermutation:
    """Basis map of ``phi^{(n)}_{a,b} = T_{a,b} ∘ phi_{a,b}^{⊗n}``."""
    return interleave(a, b, n).compose(phi_basis(a, b).power(n))


@cache
def rmatrix_power(a: int, b: int, n: int) -> IndexPermutation:
    """``R^{(a,b:n)} = T_{a,b} R^{(a,b)⊗n} T_{a,b}*`` as a permutation."""
    return rmatrix(a, b).power(n).conjugate_by(interleave(a, b, n))


class PoweredWcs:
    """The componentwise ``n``-th tensor power of the matrix system."""

    def __init__(self, power: int) -> None:
        _check_power(power)
        self._power = power

    @property
    def power(self) -> int:
        return self._power

    def dim(self, a: int) -> int:
        if a < 1:
            msg = f"monoid element must be >= 1, got {a}"
            raise ValueError(msg)
        return a**self._power

    def phi_permutation(self, a: int, b: int) -> IndexPermutation:
        return phi_power_permutation(a, b, self._power)

    def rmatrix(self, a: int, b: int) -> IndexPermutation:
        return rmatrix_power(a, b, self._power)

    def __repr__(self) -> str:
        return f"PoweredWcs({self._power})"


def phi_power(a: int, b: int, n: int, x: ComplexMatrix) -> ComplexMatrix:
    return apply_phi(PoweredWcs(n), a, b, x)


def psi_embed(a: int, n: int, x: ComplexMatrix) -> ComplexMatrix:
    """``psi^{(n)}_a(x) = x ⊗ I_a``, from stage ``n`` to stage ``n + 1``."""
    _check_power(n)
    d = a**n
    if x.shape[-2:] != (d, d):
        msg = f"psi_{a}^({n}): expected a {d}x{d} operator, got shape {x.shape}"
        raise ValueError(msg)
    return kron(x, identity(a))


def check_interleave_flip_identity(
    a: int,
    b: int,
    n: int,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``T_{a,b} ∘ tau_{b,a}^{⊗n} = tau^{(n)}_{b,a} ∘ T_{b,a}``, exactly."""
    name = f"interleave-flip identity ({a},{b}) n={n}"
    ensure_within_budget(name, (a * b) ** n, max_dim)
    tally = Tally(
        name=name,
        tolerance=tolerance,
        statement="T_{a,b} ∘ (τ_{b,a})^{⊗n} = τ^{(n)}_{b,a} ∘ T_{b,a}",
        note=PERMUTATION_NOTE,
    )
    left = interleave(a, b, n).compose(flip_permutation(b, a).power(n))
    right = flip_permutation(b**n, a**n).compose(interleave(b, a, n))
    tally.record_exact("T τ^⊗n", holds=left == right)
    return finish(tally)


def check_op_compatibility(
    a: int,
    b: int,
    n: int,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """The opposite of the powered map is the power of the opposite map."""
    d = (a * b) ** n
    name = f"op compatibility ({a},{b}) n={n}"
    ensure_within_budget(name, d, max_dim)
    identity_report = check_interleave_flip_identity(
        a, b, n, max_dim=max_dim, tolerance=tolerance
    )

    tally = Tally(
        name=name,
        tolerance=tolerance,
        statement="(φ^{(n)}_{b,a})^op = (φ^op_{b,a})^{(n)}",
        note=MATRIX_UNIT_NOTE,
    )
    powered = PoweredWcs(n)
    op_basis = flip_permutation(b, a).compose(phi_basis(b, a))
    op_power = interleave(a, b, n).compose(op_basis.power(n))
    sweep(
        tally,
        d,
        lambda x: flip(apply_phi(powered, b, a, x), b**n, a**n),
        lambda x: conjugate(op_power, x),
    )
    return merge_reports(
        name,
        [identity_report, finish(tally)],
        statement=tally.statement,
        note=f"{PERMUTATION_NOTE}; {MATRIX_UNIT_NOTE}",
    )


def check_powered_r_relation(
    a: int,
    b: int,
    n: int,
    *,
    wcs: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    if wcs is None:
        wcs = PoweredWcs(n)
    report = check_r_relation(a, b, wcs=wcs, max_dim=max_dim, tolerance=tolerance)
    return replace(report, name=f"powered {report.name} n={n}")


def check_powered_triangularity(
    a: int,
    b: int,
    c: int,
    n: int,
    *,
    wcs: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Both powered hexagons on ``(a, b, c)`` and powered triangularity on ``(a, b)``."""
    if wcs is None:
        wcs = PoweredWcs(n)
    hexagons = check_quasi_triangularity(a, b, c, wcs=wcs, max_dim=max_dim, tolerance=tolerance)
    triangular = check_triangularity(a, b, wcs=wcs, max_dim=max_dim, tolerance=tolerance)
    return merge_reports(
        f"powered hexagons and triangularity ({a},{b},{c}) n={n}",
        [hexagons, triangular],
        statement=f"{hexagons.statement}; {triangular.statement}",
        note=PERMUTATION_NOTE,
    )


def check_powered_coassociativity(
    a: int,
    b: int,
    c: int,
    n: int,
    *,
    wcs: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Weak coassociativity of stage ``n``, compared on the implementing permutations.

    Conjugations by two permutation unitaries agree on all of ``M_d`` exactly
    when the permutations are equal, so this is a complete check.
    """
    if wcs is None:
        wcs = PoweredWcs(n)
    name = f"powered weak coassociativity ({a},{b},{c}) n={n}"
    ensure_within_budget(name, wcs.dim(a * b * c), max_dim)
    tally = Tally(
        name=name,
        tolerance=tolerance,
        statement=(
            "(id ⊗ φ^{(n)}_{b,c})∘φ^{(n)}_{a,bc} = (φ^{(n)}_{a,b} ⊗ id)∘φ^{(n)}_{ab,c}"
        ),
        note=PERMUTATION_NOTE,
    )
    left = (
        IndexPermutation.identity(wcs.dim(a))
        .kron(wcs.phi_permutation(b, c))
        .compose(wcs.phi_permutation(a, b * c))
    )
    right = (
        wcs.phi_permutation(a, b)
        .kron(IndexPermutation.identity(wcs.dim(c)))
        .compose(wcs.phi_permutation(a * b, c))
    )
    tally.record_exact("basis maps", holds=left == right)
    return finish(tally)


def check_psi_compatibility(
    a: int,
    b: int,
    n: int,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``(psi_a ⊗ psi_b) ∘ phi^{(n)}_{a,b} = phi^{(n+1)}_{a,b} ∘ psi_ab`` on matrix units."""
    name = f"ψ compatibility ({a},{b}) n={n}"
    ensure_within_budget(name, (a * b) ** (n + 1), max_dim)
    stage, next_stage = PoweredWcs(n), PoweredWcs(n + 1)
    # y ⊗ I_a ⊗ I_b regrouped as (y-left ⊗ I_a) ⊗ (y-right ⊗ I_b).
    regroup = factor_permutation((a**n, b**n, a, b), (1, 3, 2, 4))
    pad = identity(a * b)
    tally = Tally(
        name=name,
        tolerance=tolerance,
        statement="(ψ^{(n)}_a ⊗ ψ^{(n)}_b)∘φ^{(n)}_{a,b} = φ^{(n+1)}_{a,b}∘ψ^{(n)}_{ab}",
        note=(
            "ψ_* is a bialgebra morphism between consecutive stages; "
            f"{MATRIX_UNIT_NOTE}"
        ),
    )
    sweep(
        tally,
        (a * b) ** n,
        lambda x: conjugate(regroup, kron(apply_phi(stage, a, b, x), pad)),
        lambda x: apply_phi(next_stage, a, b, psi_embed(a * b, n, x)),
    )
    return finish(tally)


def check_first_power_consistency(
    a: int,
    b: int,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """The first power reproduces the base system: same basis map, same R-matrix."""
    name = f"first power consistency ({a},{b})"
    ensure_within_budget(name, a * b, max_dim)
    powered = PoweredWcs(1)
    tally = Tally(
        name=name,
        tolerance=tolerance,
        statement="φ^{(1)}_{a,b} = φ_{a,b}, R^{(a,b:1)} = R^{(a,b)}",
        note=PERMUTATION_NOTE,
    )
    tally.record_exact(
        "φ basis", holds=powered.phi_permutation(a, b) == MATRIX_WCS.phi_permutation(a, b)
    )
    tally.record_exact("R-matrix", holds=powered.rmatrix(a, b) == MATRIX_WCS.rmatrix(a, b))
    return finish(tally)


def phi_power_op(
    a: int,
    b: int,
    n: int,
    x: ComplexMatrix,
) -> ComplexMatrix:
    """``(phi^{(n)}_{a,b})^op(x)``, landing in ``M_{b^n} ⊗ M_{a^n}``."""
    return apply_phi_op(PoweredWcs(n), a, b, x)
