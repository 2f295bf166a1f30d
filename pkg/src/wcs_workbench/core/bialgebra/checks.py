"""Checks on the truncated graded bialgebras and on block maps between them."""

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from loguru import logger

from wcs_workbench.config import DEFAULT_MAX_DIM, DEFAULT_TOLERANCE
from wcs_workbench.core.bialgebra.graded import (
    GradedElement,
    block_rmatrix,
    comultiply,
    comultiply_left,
    comultiply_right,
    counit_left,
    counit_right,
    opposite,
    resolve_system,
)
from wcs_workbench.core.tensor.algebra import ComplexMatrix, LinearMap, tensor_product_map
from wcs_workbench.core.verification import MATRIX_UNIT_NOTE, finish, parallel_map
from wcs_workbench.core.wcs.matrix_wcs import apply_phi, divisor_pairs
from wcs_workbench.core.wcs.power import psi_embed
from wcs_workbench.errors import ensure_within_budget
from wcs_workbench.models.report import CheckReport, Tally, merge_reports
from wcs_workbench.protocols import WcsProtocol


def _units(cutoff: int, power: int, a: int) -> list[tuple[str, GradedElement]]:
    d = a**power
    return [
        (f"a={a} E[{i},{j}]", GradedElement.matrix_unit(cutoff, power, a, i, j))
        for i in range(1, d + 1)
        for j in range(1, d + 1)
    ]


def _record_blocks(tally: Tally, label: str, deviations: Mapping[object, float]) -> None:
    for key, deviation in deviations.items():
        tally.record_lazy(deviation, lambda key=key: f"{label} block {key}")


def check_coassociativity_graded(
    cutoff: int,
    power: int,
    *,
    wcs: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``(Delta ⊗ id)∘Delta = (id ⊗ Delta)∘Delta`` on every matrix unit of every block."""
    name = f"graded coassociativity N={cutoff} i={power}"
    system = resolve_system(wcs, power)
    ensure_within_budget(name, system.dim(cutoff), max_dim)

    def block_report(a: int) -> CheckReport:
        tally = Tally(name=f"a={a}", tolerance=tolerance)
        for label, x in _units(cutoff, power, a):
            y = comultiply(x, system)
            left = comultiply_left(y, system)
            right = comultiply_right(y, system)
            if set(left) != set(right):
                tally.fail(f"{label}: triple supports differ")
                continue
            _record_blocks(
                tally,
                label,
                {k: float(np.max(np.abs(left[k] - right[k]))) for k in sorted(left)},
            )
        return tally.report()

    report = merge_reports(
        name,
        parallel_map(block_report, range(1, cutoff + 1)),
        statement="(Δ ⊗ id)∘Δ = (id ⊗ Δ)∘Δ",
        note=MATRIX_UNIT_NOTE,
    )
    logger.debug("{}: {} instances", name, report.instances)
    return report


def check_quasi_cocommutativity(
    cutoff: int,
    power: int,
    *,
    wcs: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``R Delta(x) R* = Delta^op(x)`` blockwise, for every matrix unit ``x``."""
    name = f"quasi-cocommutativity N={cutoff} i={power}"
    system = resolve_system(wcs, power)
    ensure_within_budget(name, system.dim(cutoff), max_dim)
    r = block_rmatrix(cutoff, power, system)

    def block_report(a: int) -> CheckReport:
        tally = Tally(name=f"a={a}", tolerance=tolerance)
        for label, x in _units(cutoff, power, a):
            y = comultiply(x, system)
            _record_blocks(tally, label, r.conjugate(y).deviations(opposite(y)))
        return tally.report()

    report = merge_reports(
        name,
        parallel_map(block_report, range(1, cutoff + 1)),
        statement="R Δ(x) R* = Δ^op(x), block (b,c) of Δ^op(x) = τ(block (c,b) of Δ(x))",
        note=MATRIX_UNIT_NOTE,
    )
    if report.passed:
        logger.debug("{}: {} instances", name, report.instances)
    else:
        logger.warning("{}: {} failing instances", name, report.failure_count)
    return report


def check_counit_law(
    power: int,
    *,
    wcs: WcsProtocol | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``(eps ⊗ id)∘Delta = id = (id ⊗ eps)∘Delta`` on the block ``a = 1``."""
    system = resolve_system(wcs, power)
    tally = Tally(
        name=f"counit law i={power}",
        tolerance=tolerance,
        statement="(ε ⊗ id)∘Δ = id = (id ⊗ ε)∘Δ on A_1",
        note="M_1 = C is spanned by its single matrix unit",
    )
    x = GradedElement.matrix_unit(1, power, 1, 1, 1)
    y = comultiply(x, system)
    _record_blocks(tally, "(ε ⊗ id)∘Δ", counit_left(y).deviations(x))
    _record_blocks(tally, "(id ⊗ ε)∘Δ", counit_right(y).deviations(x))
    return finish(tally)


def check_comultiplication_homomorphism(
    cutoff: int,
    power: int,
    *,
    wcs: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``Delta(xy) = Delta(x)Delta(y)`` and ``Delta(x*) = Delta(x)*`` on matrix-unit pairs."""
    name = f"Δ homomorphism N={cutoff} i={power}"
    system = resolve_system(wcs, power)
    ensure_within_budget(name, system.dim(cutoff), max_dim)

    def block_report(a: int) -> CheckReport:
        tally = Tally(name=f"a={a}", tolerance=tolerance)
        units = _units(cutoff, power, a)
        images = [comultiply(x, system) for _, x in units]
        for (label, x), dx in zip(units, images, strict=True):
            _record_blocks(
                tally, f"{label}*", comultiply(x.adjoint(), system).deviations(dx.adjoint())
            )
            for (other_label, y), dy in zip(units, images, strict=True):
                _record_blocks(
                    tally,
                    f"{label} {other_label}",
                    comultiply(x * y, system).deviations(dx * dy),
                )
        return tally.report()

    report = merge_reports(
        name,
        parallel_map(block_report, range(1, cutoff + 1)),
        statement="Δ(xy) = Δ(x)Δ(y), Δ(x*) = Δ(x)*",
        note="both identities are (sesqui)linear, so matrix units and their pairs suffice",
    )
    logger.debug("{}: {} instances", name, report.instances)
    return report


@dataclass(frozen=True)
class BlockMap:
    """A map between truncated stages given block by block.

    ``maps[a]`` sends block ``a`` of the source into block ``action(a)`` of
    the target. The block action must be multiplicative and respect both
    cutoffs.
    """

    source_power: int
    target_power: int
    cutoff: int
    target_cutoff: int
    maps: Mapping[int, LinearMap]
    action: Callable[[int], int] = field(default=lambda a: a)
    name: str = "block map"

    def __post_init__(self) -> None:
        missing = [a for a in range(1, self.cutoff + 1) if a not in self.maps]
        if missing:
            msg = f"{self.name}: no map given for blocks {missing}"
            raise ValueError(msg)
        for a in range(1, self.cutoff + 1):
            target = self.action(a)
            if not 1 <= target <= self.target_cutoff:
                msg = (
                    f"{self.name}: block {a} is sent to {target}, "
                    f"outside 1..{self.target_cutoff}"
                )
                raise ValueError(msg)
        for a in range(1, self.cutoff + 1):
            for b, c in divisor_pairs(a):
                if self.action(b) * self.action(c) != self.action(a):
                    msg = f"{self.name}: block action is not multiplicative at {b} x {c}"
                    raise ValueError(msg)

    def apply_block(self, a: int, x: ComplexMatrix) -> ComplexMatrix:
        return self.maps[a](x)

    def __call__(self, x: GradedElement) -> GradedElement:
        if (x.cutoff, x.power) != (self.cutoff, self.source_power):
            msg = f"{self.name}: element does not belong to the source stage"
            raise ValueError(msg)
        out: dict[int, ComplexMatrix] = {}
        for a, block in x.items():
            image = self.apply_block(a, block)
            target = self.action(a)
            out[target] = out[target] + image if target in out else image
        return GradedElement(self.target_cutoff, self.target_power, out)


def identity_block_map(power: int, cutoff: int) -> BlockMap:
    maps: dict[int, LinearMap] = {a: (lambda x: x) for a in range(1, cutoff + 1)}
    return BlockMap(power, power, cutoff, cutoff, maps, name="identity")


def psi_star(power: int, cutoff: int) -> BlockMap:
    """The embedding ``x ↦ x ⊗ I_a`` of stage ``power`` into stage ``power + 1``."""
    maps: dict[int, LinearMap] = {a: partial(psi_embed, a, power) for a in range(1, cutoff + 1)}
    return BlockMap(power, power + 1, cutoff, cutoff, maps, name=f"ψ_* stage {power}")


def _pushforward(
    f: BlockMap,
    source: WcsProtocol,
    a: int,
    x: ComplexMatrix,
) -> dict[tuple[int, int], ComplexMatrix]:
    """``(f ⊗ f)(Delta_1(x))`` grouped by target pair ``(action b, action c)``."""
    out: dict[tuple[int, int], ComplexMatrix] = {}
    for b, c in divisor_pairs(a):
        image = tensor_product_map(
            f.maps[b],
            f.maps[c],
            apply_phi(source, b, c, x),
            source.dim(b),
            source.dim(c),
        )
        key = (f.action(b), f.action(c))
        out[key] = out[key] + image if key in out else image
    return out


def check_bialgebra_morphism(
    f: BlockMap,
    *,
    source: WcsProtocol | None = None,
    target: WcsProtocol | None = None,
    max_dim: int = DEFAULT_MAX_DIM,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """``(f ⊗ f)∘Delta_1 = Delta_2∘f`` on all matrix units, plus unitality of every block."""
    name = f"bialgebra morphism {f.name}"
    src = resolve_system(source, f.source_power)
    dst = resolve_system(target, f.target_power)
    for a in range(1, f.cutoff + 1):
        ensure_within_budget(name, dst.dim(f.action(a)), max_dim)

    tally = Tally(
        name=name,
        tolerance=tolerance,
        statement="(f ⊗ f)∘Δ_1 = Δ_2∘f and f(I) = I",
        note=MATRIX_UNIT_NOTE,
    )
    for a in range(1, f.cutoff + 1):
        d_src, d_dst = src.dim(a), dst.dim(f.action(a))
        image = f.apply_block(a, np.eye(d_src, dtype=np.complex128))
        if image.shape != (d_dst, d_dst):
            msg = f"{f.name}: block {a} must land in a {d_dst}x{d_dst} block, got {image.shape}"
            raise ValueError(msg)
        tally.record(
            f"unitality a={a}",
            float(np.max(np.abs(image - np.eye(d_dst)))),
        )

    for a in range(1, f.cutoff + 1):
        target_a = f.action(a)
        for label, x in _units(f.cutoff, f.source_power, a):
            block = x.blocks[a]
            left = _pushforward(f, src, a, block)
            mapped = f.apply_block(a, block)
            right = {(b, c): apply_phi(dst, b, c, mapped) for b, c in divisor_pairs(target_a)}
            for key in sorted(set(left) | set(right)):
                if key not in right:
                    tally.fail(f"{label}: unexpected target block {key}")
                    continue
                lhs = left.get(key, np.zeros_like(right[key]))
                tally.record_lazy(
                    float(np.max(np.abs(lhs - right[key]))),
                    lambda key=key, label=label: f"{label} block {key}",
                )
    return finish(tally)
