"""Tests for the truncated graded algebras and their comultiplication."""

import numpy as np
import pytest

from wcs_workbench.core.bialgebra.checks import (
    check_coassociativity_graded,
    check_quasi_cocommutativity,
)
from wcs_workbench.core.bialgebra.graded import (
    BipartiteGradedElement,
    BlockRMatrix,
    GradedElement,
    block_rmatrix,
    comultiply,
    comultiply_left,
    comultiply_right,
    counit,
    counit_left,
    counit_right,
    opposite,
    resolve_system,
    stage_cutoff,
)
from wcs_workbench.core.tensor.algebra import flip, identity, kron, matrix_unit
from wcs_workbench.core.tensor.permutation import IndexPermutation
from wcs_workbench.core.wcs.matrix_wcs import MATRIX_WCS, divisor_triples, rmatrix
from wcs_workbench.core.wcs.power import PoweredWcs
from wcs_workbench.core.wcs.tamper import TamperedWcs


def random_element(rng: np.random.Generator, cutoff: int, power: int) -> GradedElement:
    blocks = {}
    for a in range(1, cutoff + 1):
        d = a**power
        blocks[a] = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return GradedElement(cutoff, power, blocks)


@pytest.mark.parametrize(
    ("cutoff", "power", "max_dim", "expected"),
    [(8, 1, 64, 8), (8, 2, 64, 8), (8, 3, 64, 4), (8, 2, 16, 4), (8, 5, 1, 1), (0, 1, 64, 1)],
)
def test_stage_cutoff(cutoff: int, power: int, max_dim: int, expected: int) -> None:
    assert stage_cutoff(cutoff, power, max_dim) == expected


def test_resolve_system() -> None:
    assert repr(resolve_system(None, 2)) == "PoweredWcs(2)"
    assert resolve_system(MATRIX_WCS, 1) is MATRIX_WCS
    with pytest.raises(ValueError, match="power 1 cannot act on a stage of power 2"):
        resolve_system(MATRIX_WCS, 2)


def test_blocks_are_validated_and_frozen() -> None:
    with pytest.raises(ValueError, match="must be 2x2"):
        GradedElement(3, 1, {2: identity(3)})
    with pytest.raises(ValueError, match="outside 1..2"):
        GradedElement(2, 1, {3: identity(3)})
    with pytest.raises(ValueError, match="cutoff and power"):
        GradedElement(0, 1)
    unit = GradedElement.unit(2, 2)
    assert unit.block(2).shape == (4, 4)
    with pytest.raises(ValueError):
        unit.blocks[1][0, 0] = 2


def test_blocks_do_not_alias_input() -> None:
    source = identity(2)
    x = GradedElement(2, 1, {2: source})
    source[0, 0] = 5
    assert x.block(2)[0, 0] == 1


def test_absent_blocks_read_as_zero() -> None:
    x = GradedElement.matrix_unit(3, 1, 2, 1, 2)
    assert x.support() == [2]
    assert not x.block(3).any()


def test_zero_element_is_neutral(rng: np.random.Generator) -> None:
    zero = GradedElement.zero(3, 1)
    x = random_element(rng, 3, 1)
    assert zero.support() == []
    assert comultiply(zero).support() == []
    assert counit(zero) == 0
    assert all(v == 0.0 for v in (x + zero).deviations(x).values())
    assert all(v == 0.0 for v in (x * zero).deviations(zero).values())


def test_from_blocks_drops_vanishing_blocks() -> None:
    x = GradedElement.from_blocks({1: np.zeros((1, 1)), 2: identity(2)}, cutoff=2, power=1)
    assert x.support() == [2]


def test_algebra_operations_are_blockwise(rng: np.random.Generator) -> None:
    x, y = random_element(rng, 3, 1), random_element(rng, 3, 1)
    product = x * y
    total = x + y
    for a in range(1, 4):
        assert np.allclose(product.block(a), x.block(a) @ y.block(a))
        assert np.allclose(total.block(a), x.block(a) + y.block(a))
        assert np.array_equal(x.adjoint().block(a), x.block(a).conj().T)
    unit = GradedElement.unit(3, 1)
    assert all(v == 0.0 for v in (unit * x).deviations(x).values())


def test_mixing_stages_is_rejected() -> None:
    with pytest.raises(ValueError, match="cannot combine"):
        GradedElement.unit(2, 1) + GradedElement.unit(3, 1)
    with pytest.raises(ValueError, match="cannot combine"):
        GradedElement.unit(2, 1) * GradedElement.unit(2, 2)


def test_comultiply_on_block_one_is_scalar() -> None:
    x = GradedElement(3, 1, {1: np.array([[2.5 - 1j]])})
    y = comultiply(x)
    assert y.support() == [(1, 1)]
    assert y.block((1, 1))[0, 0] == 2.5 - 1j


def test_comultiply_support_follows_divisors() -> None:
    x = GradedElement.matrix_unit(6, 1, 6, 1, 1)
    y = comultiply(x)
    assert y.support() == [(1, 6), (2, 3), (3, 2), (6, 1)]
    assert np.array_equal(y.block((2, 3)), kron(matrix_unit(2, 1, 1), matrix_unit(3, 1, 1)))


def test_comultiply_on_a_powered_stage() -> None:
    x = GradedElement.matrix_unit(2, 2, 2, 1, 1)
    y = comultiply(x, PoweredWcs(2))
    assert y.support() == [(1, 2), (2, 1)]
    assert y.radices((2, 1)) == (4, 1)
    assert y.block((1, 2)).shape == (4, 4)


def test_comultiply_is_unital() -> None:
    y = comultiply(GradedElement.unit(4, 1))
    for (b, c), block in y.items():
        assert np.array_equal(block, identity(b * c))


def test_comultiply_is_multiplicative(rng: np.random.Generator) -> None:
    x, y = random_element(rng, 6, 1), random_element(rng, 6, 1)
    deviations = comultiply(x * y).deviations(comultiply(x) * comultiply(y))
    assert max(deviations.values()) <= 1e-9


def test_comultiply_commutes_with_adjoint(rng: np.random.Generator) -> None:
    x = random_element(rng, 4, 2)
    deviations = comultiply(x.adjoint()).deviations(comultiply(x).adjoint())
    assert max(deviations.values()) == 0.0


def test_counit_examples() -> None:
    assert counit(GradedElement.unit(3, 1)) == 1
    assert counit(GradedElement.matrix_unit(3, 1, 2, 1, 1)) == 0
    assert counit(GradedElement(2, 2, {1: np.array([[4j]])})) == 4j


def test_counit_legs_recover_the_element(rng: np.random.Generator) -> None:
    x = random_element(rng, 4, 1)
    y = comultiply(x)
    assert max(counit_left(y).deviations(x).values()) == 0.0
    assert max(counit_right(y).deviations(x).values()) == 0.0


def test_opposite_flips_blocks() -> None:
    y = comultiply(GradedElement.matrix_unit(6, 1, 6, 2, 5))
    flipped = opposite(y)
    assert flipped.support() == y.support()
    assert np.array_equal(flipped.block((3, 2)), flip(y.block((2, 3)), 2, 3))
    assert max(opposite(flipped).deviations(y).values()) == 0.0


def test_block_rmatrix_collects_every_pair() -> None:
    r = block_rmatrix(2, 1)
    assert sorted(r.blocks) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert r.blocks[(2, 2)] == rmatrix(2, 2)


def test_block_rmatrix_validation() -> None:
    with pytest.raises(ValueError, match="must have size 4"):
        BlockRMatrix(2, 1, {(2, 2): IndexPermutation.identity(3)})
    r = block_rmatrix(2, 1)
    with pytest.raises(ValueError, match="different stages"):
        r.conjugate(BipartiteGradedElement(3, 1, {}))
    partial = BlockRMatrix(2, 1, {(1, 1): IndexPermutation.identity(1)})
    with pytest.raises(ValueError, match="no block"):
        partial.conjugate(BipartiteGradedElement(2, 1, {(1, 2): identity(2)}))


def test_block_rmatrix_implements_quasi_cocommutativity() -> None:
    y = comultiply(GradedElement.matrix_unit(4, 1, 4, 3, 2))
    assert max(block_rmatrix(4, 1).conjugate(y).deviations(opposite(y)).values()) == 0.0


def test_coassociativity_on_triple_blocks() -> None:
    y = comultiply(GradedElement.matrix_unit(12, 1, 12, 7, 4))
    left, right = comultiply_left(y), comultiply_right(y)
    assert set(left) == set(right)
    assert (2, 3, 2) in left
    for key in left:
        assert np.array_equal(left[key], right[key])


def _truncate(x: GradedElement, cutoff: int) -> GradedElement:
    return GradedElement(cutoff, x.power, {a: x.block(a) for a in range(1, cutoff + 1)})


@pytest.mark.parametrize(("power", "small", "large"), [(1, 3, 6), (1, 4, 8), (2, 2, 3)])
def test_comultiply_agrees_across_cutoffs(
    rng: np.random.Generator, power: int, small: int, large: int
) -> None:
    x = random_element(rng, large, power)
    wide = comultiply(x)
    narrow = comultiply(_truncate(x, small))
    kept = [(b, c) for (b, c) in wide.support() if b * c <= small]
    assert narrow.support() == kept
    for key in kept:
        assert np.array_equal(narrow.block(key), wide.block(key))


def test_check_reports_agree_across_cutoffs() -> None:
    small = check_coassociativity_graded(3, 1)
    large = check_coassociativity_graded(5, 1)
    assert small.instances == sum(a * a * len(divisor_triples(a)) for a in range(1, 4))
    assert large.instances == small.instances + 16 * 6 + 25 * 3
    assert small.passed
    assert large.passed


def test_tampered_failures_agree_across_cutoffs() -> None:
    tampered = TamperedWcs(MATRIX_WCS)
    small = check_quasi_cocommutativity(4, 1, wcs=tampered)
    large = check_quasi_cocommutativity(6, 1, wcs=tampered)
    assert not small.passed
    assert small.failures == large.failures
    assert small.failure_count == large.failure_count
    assert small.max_deviation == large.max_deviation
