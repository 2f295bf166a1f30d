"""The weakly coassociative system of full matrix algebras over (N, x).

Component ``n`` is ``M_n``. The structure map ``phi_{n,m}: M_nm -> M_n ⊗ M_m``
sends ``E^{(nm)}_{m(i-1)+j, m(i'-1)+j'}`` to ``E^{(n)}_{i,i'} ⊗ E^{(m)}_{j,j'}``
and the R-matrix block ``R^{(n,m)}`` sends ``e_i ⊗ e_j`` to ``e_i' ⊗ e_j'``
where ``m(i-1)+j = n(j'-1)+i'``. Every checker accepts any
:class:`~wcs_workbench.protocols.WcsProtocol`, so the powered and tampered
systems are verified by the same code.
"""

import numpy as np

from wcs_workbench.config import DEFAULT_MAX_DIM, DEFAULT_TOLERANCE
from wcs_workbench.core.tensor.algebra import (
    ComplexMatrix,
    adjoint,
    conjugate,
    flip,
    identity,
    kron,
)
from wcs_workbench.core.tensor.permutation import (
    IndexPermutation,
    flip_permutation,
    leg_embed_permutation,
)
from wcs_workbench.core.verification import (
    MATRIX_UNIT_NOTE,
    all_matrix_units,
    finish,
    stack_deviation,
    sweep,
)
from wcs_workbench.errors import ensure_within_budget
from wcs_workbench.models.report import CheckReport, Tally
from wcs_workbench.protocols import WcsProtocol

PERMUTATION_NOTE = (
    "both sides are permutation unitaries; equality is decided exactly on the index maps"
)


def divisor_pairs(a: int) -> list[tuple[int, int]]:
    """All ``(b, c)`` with ``b * c == a``, ordered by ``b``."""
    if a < 1:
        msg = f"monoid element must be >= 1, got {a}"
        raise ValueError(msg)
    return [(b, a // b) for b in range(1, a + 1) if a % b == 0]


def divisor_triples(a: int) -> list[tuple[int, int, int]]:
    return [(b, c, d) for b, rest in divisor_pairs(a) for c, d in divisor_pairs(rest)]


def phi_basis(n: int, m: int) -> IndexPermutation:
    """Basis map of ``phi_{n,m}``: composite label ``m(i-1)+j`` to the Kronecker index of ``(i,j)``.

    Under the row-major Kronecker convention this is the identity; callers
    never rely on that.
    """
    if n < 1 or m < 1:
        msg = f"monoid elements must be >= 1, got ({n}, {m})"
        raise ValueError(msg)
    i, j = np.divmod(np.arange(n * m), m)
    labels = m * i + j
    images = np.empty(n * m, dtype=np.intp)
    images[labels] = np.ravel_multi_index((i, j), (n, m))
    return IndexPermutation(images)


def rmatrix(n: int, m: int) -> IndexPermutation:
    """``R^{(n,m)}``: 0-based ``l -> (l mod n) * m + (l div n)``."""
    if n < 1 or m < 1:
        msg = f"monoid elements must be >= 1, got ({n}, {m})"
        raise ValueError(msg)
    ell = np.arange(n * m)
    return IndexPermutation((ell % n) * m + ell // n)


def _check_dim(x: ComplexMatrix, d: int, what: str) -> None:
    if x.shape[-2:] != (d, d):
        msg = f"{what}: expected a {d}x{d} operator, got shape {x.shape}"
        raise ValueError(msg)


def apply_phi(wcs: WcsProtocol, a: int, b: int, x: ComplexMatrix) -> ComplexMatrix:
    _check_dim(x, wcs.dim(a * b), f"phi_{{{a},{b}}}")
    return conjugate(wcs.phi_permutation(a, b), x)


def apply_phi_op(wcs: WcsProtocol, a: int, b: int, x: ComplexMatrix) -> ComplexMatrix:
    """``phi^op_{a,b} = tau_{a,b} ∘ phi_{a,b}``, landing in ``M_b ⊗ M_a``."""
    return flip(apply_phi(wcs, a, b, x), wcs.dim(a), wcs.dim(b))


class MatrixWcs:
    """The base system: component ``a`` is ``M_a``."""

    @property
    def power(self) -> int:
        return 1

    def dim(self, a: int) -> int:
        if a < 1:
            msg = f"monoid element must be >= 1, got {a}"
            raise ValueError(msg)
        return a

    def phi_permutation(self, a: int, b: int) -> IndexPermutation:
        return phi_basis(a, b)

    def rmatrix(self, a: int, b: int) -> IndexPermutation:
        return rmatrix(a, b)

    def __repr__(self) -> str:
        return "MatrixWcs()"


MATRIX_WCS = MatrixWcs()


def phi(n: int, m: int, x: ComplexMatrix) -> ComplexMatrix:
    return apply_phi(MATRIX_WCS, n, m, x)


def phi_op(n: int, m: int, x: ComplexMatrix) -> ComplexMatrix:
    return apply_phi_op(MATRIX_WCS, n, m, x)


def _tally(name: str, tolerance: float, statement: str, note: str) -> Tally:
    return Tally(name=name, tolerance=tolerance, statement=statement, note=note)


def check_weak_coassociativity(
    a: int,
    b: int,
    c: int,
    *,
    wcs: WcsProtocol = MATRIX_WCS,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Evaluate both sides of weak coassociativity on every matrix unit of the ``abc`` block."""
    name = f"weak coassociativity ({a},{b},{c})"
    ensure_within_budget(name, wcs.dim(a * b * c), max_dim)
    da, dc = wcs.dim(a), wcs.dim(c)
    inner_left = wcs.phi_permutation(a, b * c)
    outer_left = IndexPermutation.identity(da).kron(wcs.phi_permutation(b, c))
    inner_right = wcs.phi_permutation(a * b, c)
    outer_right = wcs.phi_permutation(a, b).kron(IndexPermutation.identity(dc))

    tally = _tally(
        name,
        tolerance,
        "(id_a ⊗ φ_{b,c})∘φ_{a,bc} = (φ_{a,b} ⊗ id_c)∘φ_{ab,c}",
        MATRIX_UNIT_NOTE,
    )
    sweep(
        tally,
        wcs.dim(a * b * c),
        lambda x: conjugate(outer_left, conjugate(inner_left, x)),
        lambda x: conjugate(outer_right, conjugate(inner_right, x)),
    )
    return finish(tally)


def check_unit_conditions(
    a: int,
    *,
    wcs: WcsProtocol = MATRIX_WCS,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    name = f"unit conditions a={a}"
    d = wcs.dim(a)
    ensure_within_budget(name, d, max_dim)
    unit = identity(wcs.dim(1))
    tally = _tally(
        name,
        tolerance,
        "φ_{1,a}(x) = I_1 ⊗ x and φ_{a,1}(x) = x ⊗ I_1",
        MATRIX_UNIT_NOTE,
    )
    sweep(tally, d, lambda x: apply_phi(wcs, 1, a, x), lambda x: kron(unit, x), prefix="left ")
    sweep(tally, d, lambda x: apply_phi(wcs, a, 1, x), lambda x: kron(x, unit), prefix="right ")
    return finish(tally)


def check_r_relation(
    a: int,
    b: int,
    *,
    wcs: WcsProtocol = MATRIX_WCS,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Check ``R^{(a,b)} phi_{a,b}(x) R^{(a,b)}* = phi^op_{b,a}(x)`` on all matrix units."""
    name = f"R-relation ({a},{b})"
    ensure_within_budget(name, wcs.dim(a * b), max_dim)
    r = wcs.rmatrix(a, b)
    tally = _tally(
        name,
        tolerance,
        "R^{(a,b)} φ_{a,b}(x) R^{(a,b)}* = φ^op_{b,a}(x)",
        MATRIX_UNIT_NOTE,
    )
    sweep(
        tally,
        wcs.dim(a * b),
        lambda x: conjugate(r, apply_phi(wcs, a, b, x)),
        lambda x: apply_phi_op(wcs, b, a, x),
    )
    return finish(tally)


def check_quasi_triangularity(
    a: int,
    b: int,
    c: int,
    *,
    wcs: WcsProtocol = MATRIX_WCS,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Both hexagon identities as exact permutation equalities on ``C^a ⊗ C^b ⊗ C^c``."""
    name = f"hexagons ({a},{b},{c})"
    ensure_within_budget(name, wcs.dim(a * b * c), max_dim)
    da, dc = wcs.dim(a), wcs.dim(c)
    radices = (da, wcs.dim(b), dc)
    tally = _tally(
        name,
        tolerance,
        "(φ_{a,b} ⊗ id)(R^{(ab,c)}) = R^{(a,c)}_13 R^{(b,c)}_23 and "
        "(id ⊗ φ_{b,c})(R^{(a,bc)}) = R^{(a,c)}_13 R^{(a,b)}_12",
        PERMUTATION_NOTE,
    )

    r13 = leg_embed_permutation(wcs.rmatrix(a, c), radices, 1, 3)
    r23 = leg_embed_permutation(wcs.rmatrix(b, c), radices, 2, 3)
    r12 = leg_embed_permutation(wcs.rmatrix(a, b), radices, 1, 2)

    left_first = wcs.rmatrix(a * b, c).conjugate_by(
        wcs.phi_permutation(a, b).kron(IndexPermutation.identity(dc))
    )
    tally.record_exact("first hexagon", holds=left_first == r13.compose(r23))

    left_second = wcs.rmatrix(a, b * c).conjugate_by(
        IndexPermutation.identity(da).kron(wcs.phi_permutation(b, c))
    )
    tally.record_exact("second hexagon", holds=left_second == r13.compose(r12))
    return finish(tally)


def check_triangularity(
    a: int,
    b: int,
    *,
    wcs: WcsProtocol = MATRIX_WCS,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    name = f"triangularity ({a},{b})"
    ensure_within_budget(name, wcs.dim(a * b), max_dim)
    da, db = wcs.dim(a), wcs.dim(b)
    flipped = wcs.rmatrix(b, a).conjugate_by(flip_permutation(db, da))
    tally = _tally(
        name,
        tolerance,
        "R^{(a,b)} τ_{b,a}(R^{(b,a)}) = I_a ⊗ I_b",
        PERMUTATION_NOTE,
    )
    tally.record_exact("R τ(R)", holds=wcs.rmatrix(a, b).compose(flipped).is_identity())
    return finish(tally)


def check_phi_homomorphism(
    n: int,
    m: int,
    *,
    wcs: WcsProtocol = MATRIX_WCS,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Unitality, adjoints and products of ``phi_{n,m}`` on all matrix-unit pairs."""
    name = f"φ homomorphism ({n},{m})"
    d = wcs.dim(n * m)
    ensure_within_budget(name, d, max_dim)
    p = wcs.phi_permutation(n, m)
    tally = _tally(
        name,
        tolerance,
        "φ(I) = I ⊗ I, φ(x*) = φ(x)*, φ(xy) = φ(x)φ(y)",
        "products are bilinear, so matrix-unit pairs span all pairs",
    )

    eye = identity(d)
    tally.record("unit", float(stack_deviation(conjugate(p, eye), eye)))

    units = all_matrix_units(d)
    images = conjugate(p, units)
    tally.record_many(
        stack_deviation(conjugate(p, adjoint(units)), adjoint(images)).tolist(),
        lambda k: f"adjoint of E[{k // d + 1},{k % d + 1}]",
    )
    for u in range(d * d):
        deviations = stack_deviation(conjugate(p, units[u] @ units), images[u] @ images)
        tally.record_many(
            deviations.tolist(),
            lambda k, u=u: (
                f"product E[{u // d + 1},{u % d + 1}] E[{k // d + 1},{k % d + 1}]"
            ),
        )
    return finish(tally)
