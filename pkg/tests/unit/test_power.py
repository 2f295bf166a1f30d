"""Tests for componentwise tensor powers and the stage embeddings."""

import numpy as np
import pytest

from wcs_workbench.core.tensor.algebra import conjugate, identity, kron, matrix_unit
from wcs_workbench.core.tensor.permutation import IndexPermutation, flip_permutation
from wcs_workbench.core.wcs.matrix_wcs import MATRIX_WCS, check_r_relation, phi, rmatrix
from wcs_workbench.core.wcs.power import (
    PoweredWcs,
    check_first_power_consistency,
    check_interleave_flip_identity,
    check_op_compatibility,
    check_powered_coassociativity,
    check_powered_r_relation,
    check_powered_triangularity,
    check_psi_compatibility,
    interleave,
    phi_power,
    phi_power_op,
    psi_embed,
    rmatrix_power,
)
from wcs_workbench.core.wcs.tamper import TamperedWcs
from wcs_workbench.errors import BudgetExceededError


def test_interleave_first_power_is_identity() -> None:
    assert interleave(3, 2, 1).is_identity()


def test_interleave_square_of_qubits_matches_formula() -> None:
    t = interleave(2, 2, 2)
    for x1, y1, x2, y2 in np.ndindex(2, 2, 2, 2):
        assert t(8 * x1 + 4 * y1 + 2 * x2 + y2) == 8 * x1 + 4 * x2 + 2 * y1 + y2


def test_interleave_is_a_bijection() -> None:
    images = interleave(2, 3, 2).images
    assert sorted(images.tolist()) == list(range(36))


def test_interleave_rejects_zero_power() -> None:
    with pytest.raises(ValueError, match="tensor power"):
        interleave(2, 2, 0)


def test_phi_power_first_power_equals_phi(rng: np.random.Generator) -> None:
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    assert np.array_equal(phi_power(2, 3, 1, x), phi(2, 3, x))


def test_phi_power_is_unital() -> None:
    assert np.array_equal(phi_power(2, 2, 2, identity(16)), kron(identity(4), identity(4)))


def test_phi_power_on_simple_tensors() -> None:
    e, f = matrix_unit(4, 2, 3), matrix_unit(4, 4, 1)
    expected = conjugate(interleave(2, 2, 2), kron(phi(2, 2, e), phi(2, 2, f)))
    assert np.array_equal(phi_power(2, 2, 2, kron(e, f)), expected)


def test_phi_power_op_lands_in_flipped_product() -> None:
    x = kron(matrix_unit(4, 1, 2), matrix_unit(9, 3, 3))
    assert phi_power_op(2, 3, 2, x).shape == (36, 36)


def test_rmatrix_power_examples() -> None:
    assert rmatrix_power(2, 3, 1) == rmatrix(2, 3)
    assert rmatrix_power(2, 2, 2) == flip_permutation(4, 4)


def test_rmatrix_power_is_a_bijection_within_bound() -> None:
    for a, b, n in [(3, 3, 2), (2, 3, 2), (3, 1, 4), (2, 2, 3)]:
        r = rmatrix_power(a, b, n)
        assert r.size == (a * b) ** n <= 81
        assert r.compose(r.inverse()).is_identity()


def test_powered_system_dimensions() -> None:
    system = PoweredWcs(3)
    assert system.power == 3
    assert system.dim(2) == 8
    with pytest.raises(ValueError, match=">= 1"):
        system.dim(0)
    with pytest.raises(ValueError, match="tensor power"):
        PoweredWcs(0)


def test_first_power_agrees_with_base_system() -> None:
    first = PoweredWcs(1)
    for a, b in [(1, 1), (2, 3), (4, 2)]:
        assert first.phi_permutation(a, b) == MATRIX_WCS.phi_permutation(a, b)
        assert first.rmatrix(a, b) == MATRIX_WCS.rmatrix(a, b)
        assert check_first_power_consistency(a, b).passed


@pytest.mark.parametrize("case", [(2, 2, 2), (2, 3, 2), (3, 3, 1)])
def test_interleave_flip_identity(case: tuple[int, int, int]) -> None:
    assert check_interleave_flip_identity(*case).passed


@pytest.mark.parametrize("case", [(2, 3, 1), (2, 2, 2), (2, 3, 2)])
def test_op_compatibility(case: tuple[int, int, int]) -> None:
    report = check_op_compatibility(*case)
    assert report.passed
    a, b, n = case
    # one exact identity plus every matrix unit of M_{(ab)^n}
    assert report.instances == 1 + (a * b) ** (2 * n)


@pytest.mark.parametrize("case", [(1, 3, 2), (2, 2, 2), (2, 3, 2)])
def test_powered_r_relation(case: tuple[int, int, int]) -> None:
    report = check_powered_r_relation(*case)
    assert report.passed
    assert report.name.startswith("powered R-relation")


def test_powered_r_relation_first_power_matches_base() -> None:
    assert check_powered_r_relation(2, 3, 1).max_deviation == check_r_relation(2, 3).max_deviation


@pytest.mark.parametrize("case", [(2, 2, 1, 1), (2, 2, 2, 2), (2, 3, 1, 2)])
def test_powered_hexagons_and_triangularity(case: tuple[int, int, int, int]) -> None:
    report = check_powered_triangularity(*case)
    assert report.passed
    assert report.instances == 3


@pytest.mark.parametrize("case", [(1, 1, 1, 3), (2, 2, 2, 2), (2, 3, 1, 2)])
def test_powered_coassociativity(case: tuple[int, int, int, int]) -> None:
    assert check_powered_coassociativity(*case).passed


def test_powered_checks_respect_budget() -> None:
    with pytest.raises(BudgetExceededError):
        check_powered_coassociativity(2, 2, 2, 3)


def test_psi_embed_examples() -> None:
    assert np.array_equal(psi_embed(2, 1, identity(2)), identity(4))
    assert np.array_equal(
        psi_embed(2, 1, matrix_unit(2, 1, 2)), kron(matrix_unit(2, 1, 2), identity(2))
    )
    with pytest.raises(ValueError, match="expected a 4x4"):
        psi_embed(2, 2, identity(2))


def test_psi_embed_is_multiplicative_on_matrix_units() -> None:
    for i, j, k, m in np.ndindex(3, 3, 3, 3):
        x, y = matrix_unit(3, i + 1, j + 1), matrix_unit(3, k + 1, m + 1)
        assert np.array_equal(psi_embed(3, 1, x @ y), psi_embed(3, 1, x) @ psi_embed(3, 1, y))


@pytest.mark.parametrize(("case", "units"), [((1, 1, 1), 1), ((2, 2, 1), 16), ((2, 3, 1), 36)])
def test_psi_compatibility(case: tuple[int, int, int], units: int) -> None:
    report = check_psi_compatibility(*case)
    assert report.passed
    assert report.instances == units


def test_tampered_powered_block_fails(tampered_square: TamperedWcs) -> None:
    report = check_powered_r_relation(2, 2, 2, wcs=tampered_square)
    assert not report.passed
    assert report.failure_count > 0


def test_tampered_transposition_is_still_a_permutation(tampered_square: TamperedWcs) -> None:
    r = tampered_square.rmatrix(2, 2)
    assert r == rmatrix_power(2, 2, 2).compose(IndexPermutation.transposition(16, 0, 1))
    assert tampered_square.rmatrix(2, 3) == rmatrix_power(2, 3, 2)
