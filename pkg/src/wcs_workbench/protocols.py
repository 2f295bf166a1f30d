"""Protocols for dependency injection in the verification checks."""

from collections.abc import Callable
from typing import Protocol, runtime_checkable

from wcs_workbench.core.tensor.permutation import IndexPermutation


@runtime_checkable
class WcsProtocol(Protocol):
    """A weakly coassociative system of matrix algebras over (N, x).

    Component ``a`` is the full matrix algebra of size ``dim(a)``. Both
    structure maps are given by permutation unitaries: ``phi_{a,b}`` is
    conjugation by ``phi_permutation(a, b)``, which carries the basis of
    ``C^dim(ab)`` onto ``C^dim(a) ⊗ C^dim(b)``.
    """

    @property
    def power(self) -> int:
        """Componentwise tensor power (1 for the base system)."""
        ...

    def dim(self, a: int) -> int:
        """Matrix size of component ``a``."""
        ...

    def phi_permutation(self, a: int, b: int) -> IndexPermutation:
        """Basis map implementing ``phi_{a,b}``."""
        ...

    def rmatrix(self, a: int, b: int) -> IndexPermutation:
        """The R-matrix block ``R^{(a,b)}`` on ``C^dim(a) ⊗ C^dim(b)``."""
        ...


# Builds the system of a given tensor power.
WcsFactory = Callable[[int], WcsProtocol]
