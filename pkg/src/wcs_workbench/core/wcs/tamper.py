"""Negative control: a system whose R-matrix is corrupted in one block."""

from loguru import logger

from wcs_workbench.core.tensor.permutation import IndexPermutation
from wcs_workbench.protocols import WcsProtocol

DEFAULT_TAMPERED_BLOCK: tuple[int, int] = (2, 2)


class TamperedWcs:
    """Delegates to ``wcs`` except that ``R^{block}`` is composed with a transposition.

    The transposition swaps the first two basis vectors of ``C^a ⊗ C^b``, so
    the corrupted block is still a unitary but no longer an R-matrix.
    """

    def __init__(
        self,
        wcs: WcsProtocol,
        block: tuple[int, int] = DEFAULT_TAMPERED_BLOCK,
    ) -> None:
        a, b = block
        if wcs.dim(a) * wcs.dim(b) < 2:
            msg = f"block {block} is one-dimensional and cannot be tampered with"
            raise ValueError(msg)
        self._wcs = wcs
        self.block = block

    @property
    def power(self) -> int:
        return self._wcs.power

    def dim(self, a: int) -> int:
        return self._wcs.dim(a)

    def phi_permutation(self, a: int, b: int) -> IndexPermutation:
        return self._wcs.phi_permutation(a, b)

    def rmatrix(self, a: int, b: int) -> IndexPermutation:
        r = self._wcs.rmatrix(a, b)
        if (a, b) != self.block:
            return r
        logger.debug("Serving tampered R-matrix block {}", self.block)
        return r.compose(IndexPermutation.transposition(r.size, 0, 1))

    def __repr__(self) -> str:
        return f"TamperedWcs({self._wcs!r}, block={self.block})"
