"""Tests for the weakly coassociative system of full matrix algebras."""

import numpy as np
import pytest

from tests.unit.fakes import RecordingWcs
from wcs_workbench.core.tensor.algebra import identity, kron, matrix_unit
from wcs_workbench.core.tensor.permutation import flip_permutation
from wcs_workbench.core.wcs.matrix_wcs import (
    MATRIX_WCS,
    check_phi_homomorphism,
    check_quasi_triangularity,
    check_r_relation,
    check_triangularity,
    check_unit_conditions,
    check_weak_coassociativity,
    divisor_pairs,
    divisor_triples,
    phi,
    phi_basis,
    phi_op,
    rmatrix,
)
from wcs_workbench.core.wcs.tamper import TamperedWcs
from wcs_workbench.errors import BudgetExceededError
from wcs_workbench.protocols import WcsProtocol


def test_divisor_pairs_examples() -> None:
    assert divisor_pairs(1) == [(1, 1)]
    assert divisor_pairs(6) == [(1, 6), (2, 3), (3, 2), (6, 1)]
    assert divisor_pairs(4) == [(1, 4), (2, 2), (4, 1)]
    with pytest.raises(ValueError, match=">= 1"):
        divisor_pairs(0)


def test_divisor_triples_multiply_out() -> None:
    triples = divisor_triples(12)
    assert len(triples) == 18
    assert all(b * c * d == 12 for b, c, d in triples)


def test_phi_sends_composite_unit_to_simple_tensor() -> None:
    assert np.array_equal(
        phi(2, 2, matrix_unit(4, 2, 3)), kron(matrix_unit(2, 1, 2), matrix_unit(2, 2, 1))
    )


def test_phi_unit_and_trivial_factor(rng: np.random.Generator) -> None:
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.array_equal(phi(1, 3, x), x)
    assert np.array_equal(phi(3, 2, identity(6)), kron(identity(3), identity(2)))


def test_phi_basis_is_the_row_major_identity() -> None:
    assert phi_basis(3, 4).is_identity()


def test_phi_rejects_wrong_dimension() -> None:
    with pytest.raises(ValueError, match="expected a 6x6"):
        phi(2, 3, identity(5))


def test_rmatrix_examples() -> None:
    assert rmatrix(4, 1).is_identity()
    assert rmatrix(1, 4).is_identity()
    assert rmatrix(2, 2).images.tolist() == [0, 2, 1, 3]
    # (i, j) = (1, 2) of C^2 ⊗ C^3 goes to (2, 1).
    assert rmatrix(2, 3)(1) == 3


def test_rmatrix_is_the_factor_flip() -> None:
    for n, m in [(2, 3), (3, 4), (5, 2)]:
        assert rmatrix(n, m) == flip_permutation(m, n)


def test_phi_op_examples(rng: np.random.Generator) -> None:
    assert np.array_equal(
        phi_op(2, 2, matrix_unit(4, 2, 3)), kron(matrix_unit(2, 2, 1), matrix_unit(2, 1, 2))
    )
    x = rng.standard_normal((4, 4)) + 0j
    assert np.array_equal(phi_op(1, 4, x), x)
    assert np.array_equal(phi_op(1, 1, matrix_unit(1, 1, 1)), phi(1, 1, matrix_unit(1, 1, 1)))


@pytest.mark.parametrize("triple", [(1, 1, 1), (2, 3, 2), (2, 2, 2)])
def test_weak_coassociativity(triple: tuple[int, int, int]) -> None:
    report = check_weak_coassociativity(*triple)
    assert report.passed
    assert report.max_deviation == 0.0
    a, b, c = triple
    assert report.instances == (a * b * c) ** 2


@pytest.mark.parametrize(("a", "units"), [(1, 1), (2, 4), (5, 25)])
def test_unit_conditions(a: int, units: int) -> None:
    report = check_unit_conditions(a)
    assert report.passed
    assert report.instances == 2 * units


@pytest.mark.parametrize("pair", [(1, 5), (2, 2), (2, 3)])
def test_r_relation(pair: tuple[int, int]) -> None:
    report = check_r_relation(*pair)
    assert report.passed
    assert report.max_deviation == 0.0


@pytest.mark.parametrize("triple", [(1, 1, 1), (2, 2, 2), (2, 3, 2)])
def test_hexagons(triple: tuple[int, int, int]) -> None:
    report = check_quasi_triangularity(*triple)
    assert report.passed
    assert report.instances == 2


@pytest.mark.parametrize("pair", [(1, 4), (2, 2), (3, 4)])
def test_triangularity(pair: tuple[int, int]) -> None:
    assert check_triangularity(*pair).passed


def test_phi_is_a_unital_star_homomorphism() -> None:
    report = check_phi_homomorphism(2, 3)
    assert report.passed
    # unit + 36 adjoints + 36 * 36 products
    assert report.instances == 1 + 36 + 36**2


def test_checks_refuse_over_budget() -> None:
    with pytest.raises(BudgetExceededError, match="exceeds budget 16"):
        check_weak_coassociativity(2, 3, 3, max_dim=16)


def test_r_relation_consults_only_its_block(recording_wcs: RecordingWcs) -> None:
    check_r_relation(2, 3, wcs=recording_wcs)
    assert recording_wcs.requested("rmatrix") == [(2, 3)]


def test_recording_fake_is_a_system(recording_wcs: RecordingWcs) -> None:
    assert isinstance(recording_wcs, WcsProtocol)
    assert isinstance(MATRIX_WCS, WcsProtocol)


def test_tampered_block_breaks_r_relation(tampered_base: TamperedWcs) -> None:
    report = check_r_relation(2, 2, wcs=tampered_base)
    assert not report.passed
    assert report.failures
    assert report.max_deviation == 1.0


def test_tampering_leaves_other_blocks_alone(tampered_base: TamperedWcs) -> None:
    assert check_r_relation(2, 3, wcs=tampered_base).passed
    assert check_weak_coassociativity(2, 2, 2, wcs=tampered_base).passed


TAMPERABLE_BLOCKS = [(a, b) for n in range(2, 37) for a, b in divisor_pairs(n)]


@pytest.mark.parametrize(("a", "b"), TAMPERABLE_BLOCKS)
def test_every_tampered_block_breaks_its_r_relation(a: int, b: int) -> None:
    tampered = TamperedWcs(MATRIX_WCS, (a, b))
    report = check_r_relation(a, b, wcs=tampered)
    assert not report.passed
    assert report.max_deviation == 1.0
    if a != b:
        assert check_r_relation(b, a, wcs=tampered).passed


def test_tampered_block_breaks_hexagons(tampered_base: TamperedWcs) -> None:
    report = check_quasi_triangularity(2, 2, 2, wcs=tampered_base)
    assert not report.passed
    assert "first hexagon: permutations differ" in report.failures


def test_trivial_block_cannot_be_tampered() -> None:
    with pytest.raises(ValueError, match="one-dimensional"):
        TamperedWcs(MATRIX_WCS, block=(1, 1))
