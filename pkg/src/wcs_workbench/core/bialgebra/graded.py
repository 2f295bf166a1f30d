"""Truncated direct-sum bialgebras built from a weakly coassociative system.

Stage ``i`` is the direct sum of the blocks ``M_a^{⊗i}``, ``a = 1..cutoff``.
Every identity checked on it is block-local and divisor-closed (``bc = a``
forces ``b, c <= a``), so truncating at a cutoff never creates spurious
failures. Elements of the two-fold tensor product are kept as families of
blocks indexed by pairs ``(b, c)``; the blockwise R-matrix is a family of
permutations indexed the same way.
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import Generic, TypeVar

import numpy as np

from wcs_workbench.core.tensor.algebra import (
    ComplexMatrix,
    adjoint,
    conjugate,
    flip,
    matrix_unit,
)
from wcs_workbench.core.tensor.permutation import IndexPermutation
from wcs_workbench.core.wcs.matrix_wcs import apply_phi, divisor_pairs
from wcs_workbench.core.wcs.power import PoweredWcs
from wcs_workbench.protocols import WcsProtocol

K = TypeVar("K", int, tuple[int, int])


def stage_cutoff(cutoff: int, power: int, max_dim: int) -> int:
    """Largest ``N <= cutoff`` with ``N**power <= max_dim`` (at least 1)."""
    n = max(1, cutoff)
    while n > 1 and n**power > max_dim:
        n -= 1
    return n


def _frozen(x: ComplexMatrix) -> ComplexMatrix:
    arr = np.array(x, dtype=np.complex128)
    arr.flags.writeable = False
    return arr


def resolve_system(wcs: WcsProtocol | None, power: int) -> WcsProtocol:
    if wcs is None:
        return PoweredWcs(power)
    if wcs.power != power:
        msg = f"system of power {wcs.power} cannot act on a stage of power {power}"
        raise ValueError(msg)
    return wcs


@dataclass(frozen=True, eq=False)
class _BlockFamily(Generic[K]):
    cutoff: int
    power: int
    blocks: Mapping[K, ComplexMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.cutoff < 1 or self.power < 1:
            msg = f"cutoff and power must be >= 1, got cutoff={self.cutoff}, power={self.power}"
            raise ValueError(msg)
        frozen: dict[K, ComplexMatrix] = {}
        for key in sorted(self.blocks):
            block = self.blocks[key]
            d = self.block_dim(key)
            if block.shape != (d, d):
                msg = f"block {key} must be {d}x{d}, got shape {block.shape}"
                raise ValueError(msg)
            frozen[key] = _frozen(block)
        object.__setattr__(self, "blocks", frozen)

    def block_dim(self, key: K) -> int:
        raise NotImplementedError

    def block(self, key: K) -> ComplexMatrix:
        """Block ``key``; absent blocks are zero."""
        if key in self.blocks:
            return self.blocks[key]
        d = self.block_dim(key)
        return np.zeros((d, d), dtype=np.complex128)

    def support(self) -> list[K]:
        return list(self.blocks)

    def items(self) -> Iterator[tuple[K, ComplexMatrix]]:
        yield from self.blocks.items()

    def _same_shape(self, other: "_BlockFamily[K]") -> None:
        if type(other) is not type(self) or (other.cutoff, other.power) != (
            self.cutoff,
            self.power,
        ):
            msg = (
                f"cannot combine {type(self).__name__}(cutoff={self.cutoff}, power={self.power}) "
                f"with {type(other).__name__}(cutoff={other.cutoff}, power={other.power})"
            )
            raise ValueError(msg)

    def deviations(self, other: "_BlockFamily[K]") -> dict[K, float]:
        """Entrywise sup-norm of the difference, per block of either support."""
        self._same_shape(other)
        keys = sorted(set(self.blocks) | set(other.blocks))
        return {k: float(np.max(np.abs(self.block(k) - other.block(k)))) for k in keys}


@dataclass(frozen=True, eq=False)
class GradedElement(_BlockFamily[int]):
    """Element of the stage ``power`` algebra; block ``a`` lives in ``M_{a^power}``."""

    def block_dim(self, key: int) -> int:
        if not 1 <= key <= self.cutoff:
            msg = f"block index {key} outside 1..{self.cutoff}"
            raise ValueError(msg)
        return key**self.power

    @classmethod
    def zero(cls, cutoff: int, power: int) -> "GradedElement":
        return cls(cutoff, power)

    @classmethod
    def unit(cls, cutoff: int, power: int) -> "GradedElement":
        """The unit ``(I_a)_a`` of the truncated algebra."""
        return cls(
            cutoff,
            power,
            {a: np.eye(a**power, dtype=np.complex128) for a in range(1, cutoff + 1)},
        )

    @classmethod
    def matrix_unit(cls, cutoff: int, power: int, a: int, i: int, j: int) -> "GradedElement":
        """``E_{i,j}`` (1-based) placed in block ``a``."""
        return cls(cutoff, power, {a: matrix_unit(a**power, i, j)})

    @classmethod
    def from_blocks(
        cls, blocks: Mapping[int, ComplexMatrix], *, cutoff: int, power: int
    ) -> "GradedElement":
        """Build an element, dropping blocks that vanish identically."""
        return cls(cutoff, power, {a: x for a, x in blocks.items() if np.any(x)})

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._same_shape(other)
        keys = sorted(set(self.blocks) | set(other.blocks))
        return GradedElement(
            self.cutoff, self.power, {a: self.block(a) + other.block(a) for a in keys}
        )

    def __mul__(self, other: "GradedElement") -> "GradedElement":
        self._same_shape(other)
        keys = sorted(set(self.blocks) & set(other.blocks))
        return GradedElement(
            self.cutoff, self.power, {a: self.blocks[a] @ other.blocks[a] for a in keys}
        )

    def adjoint(self) -> "GradedElement":
        return GradedElement(self.cutoff, self.power, {a: adjoint(x) for a, x in self.items()})


@dataclass(frozen=True, eq=False)
class BipartiteGradedElement(_BlockFamily[tuple[int, int]]):
    """Element of the two-fold tensor product; block ``(b, c)`` has radices ``(b^i, c^i)``."""

    def block_dim(self, key: tuple[int, int]) -> int:
        b, c = key
        if not (1 <= b <= self.cutoff and 1 <= c <= self.cutoff):
            msg = f"block index {key} outside 1..{self.cutoff}"
            raise ValueError(msg)
        return (b * c) ** self.power

    def radices(self, key: tuple[int, int]) -> tuple[int, int]:
        b, c = key
        return b**self.power, c**self.power

    def __mul__(self, other: "BipartiteGradedElement") -> "BipartiteGradedElement":
        self._same_shape(other)
        keys = sorted(set(self.blocks) & set(other.blocks))
        return BipartiteGradedElement(
            self.cutoff, self.power, {k: self.blocks[k] @ other.blocks[k] for k in keys}
        )

    def adjoint(self) -> "BipartiteGradedElement":
        return BipartiteGradedElement(
            self.cutoff, self.power, {k: adjoint(x) for k, x in self.items()}
        )


@dataclass(frozen=True, eq=False)
class BlockRMatrix:
    """Blockwise universal R-matrix: ``R^{(a,b)}`` acts on block ``(a, b)``."""

    cutoff: int
    power: int
    blocks: Mapping[tuple[int, int], IndexPermutation]

    def __post_init__(self) -> None:
        for (a, b), perm in self.blocks.items():
            expected = (a * b) ** self.power
            if perm.size != expected:
                msg = f"R block ({a},{b}) must have size {expected}, got {perm.size}"
                raise ValueError(msg)
        object.__setattr__(self, "blocks", dict(self.blocks))

    def conjugate(self, y: BipartiteGradedElement) -> BipartiteGradedElement:
        """``R y R*`` blockwise."""
        if (y.cutoff, y.power) != (self.cutoff, self.power):
            msg = "R-matrix and element belong to different stages"
            raise ValueError(msg)
        out: dict[tuple[int, int], ComplexMatrix] = {}
        for key, block in y.items():
            if key not in self.blocks:
                msg = f"R-matrix has no block {key}"
                raise ValueError(msg)
            out[key] = conjugate(self.blocks[key], block)
        return BipartiteGradedElement(y.cutoff, y.power, out)


def comultiply(x: GradedElement, wcs: WcsProtocol | None = None) -> BipartiteGradedElement:
    """Block ``(b, c)`` of the result is ``phi_{b,c}(x_{bc})``."""
    system = resolve_system(wcs, x.power)
    out: dict[tuple[int, int], ComplexMatrix] = {}
    for a, block in x.items():
        for b, c in divisor_pairs(a):
            out[(b, c)] = apply_phi(system, b, c, block)
    return BipartiteGradedElement(x.cutoff, x.power, out)


def counit(x: GradedElement) -> complex:
    """Evaluation on block 1 (``M_1 = C``); zero when block 1 is absent."""
    if 1 not in x.blocks:
        return 0j
    return complex(x.blocks[1][0, 0])


def counit_left(y: BipartiteGradedElement) -> GradedElement:
    """``(eps ⊗ id)(y)``: block ``c`` is ``y_{(1,c)}`` with the scalar factor dropped."""
    return GradedElement(y.cutoff, y.power, {c: x for (b, c), x in y.items() if b == 1})


def counit_right(y: BipartiteGradedElement) -> GradedElement:
    return GradedElement(y.cutoff, y.power, {b: x for (b, c), x in y.items() if c == 1})


def opposite(y: BipartiteGradedElement) -> BipartiteGradedElement:
    """Extended flip: block ``(b, c)`` of the result is ``tau(y_{(c,b)})``."""
    out: dict[tuple[int, int], ComplexMatrix] = {}
    for (c, b), block in y.items():
        dc, db = y.radices((c, b))
        out[(b, c)] = flip(block, dc, db)
    return BipartiteGradedElement(y.cutoff, y.power, out)


def block_rmatrix(cutoff: int, power: int, wcs: WcsProtocol | None = None) -> BlockRMatrix:
    system = resolve_system(wcs, power)
    blocks = {
        (a, b): system.rmatrix(a, b)
        for a in range(1, cutoff + 1)
        for b in range(1, cutoff + 1)
    }
    return BlockRMatrix(cutoff, power, blocks)


TripleBlocks = dict[tuple[int, int, int], ComplexMatrix]


def comultiply_left(y: BipartiteGradedElement, wcs: WcsProtocol | None = None) -> TripleBlocks:
    """``(Delta ⊗ id)(y)`` as blocks ``(b, c, d)``."""
    system = resolve_system(wcs, y.power)
    out: TripleBlocks = {}
    for (a, d), block in y.items():
        pad = IndexPermutation.identity(system.dim(d))
        for b, c in divisor_pairs(a):
            out[(b, c, d)] = conjugate(system.phi_permutation(b, c).kron(pad), block)
    return out


def comultiply_right(y: BipartiteGradedElement, wcs: WcsProtocol | None = None) -> TripleBlocks:
    """``(id ⊗ Delta)(y)`` as blocks ``(b, c, d)``."""
    system = resolve_system(wcs, y.power)
    out: TripleBlocks = {}
    for (b, a), block in y.items():
        pad = IndexPermutation.identity(system.dim(b))
        for c, d in divisor_pairs(a):
            out[(b, c, d)] = conjugate(pad.kron(system.phi_permutation(c, d)), block)
    return out
