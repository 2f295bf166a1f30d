"""Exact index permutations and factor reorderings of Kronecker products.

A permutation ``p`` of ``{0, ..., d-1}`` stands for the unitary ``U`` with
``U e_l = e_{p(l)}``. Products of such unitaries are compositions, so every
structural identity between permutation operators is checked in integer
arithmetic.

Composite indices are row-major: for radices ``(d_1, ..., d_k)`` the digits
``(i_1, ..., i_k)`` have index ``((i_1 d_2 + i_2) d_3 + ...)``, which is the
index ``numpy.kron`` uses.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from math import prod

import numpy as np
import numpy.typing as npt

Radices = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class IndexPermutation:
    """A bijection of ``{0, ..., size-1}``, stored as the array of images."""

    images: npt.NDArray[np.intp]

    def __post_init__(self) -> None:
        images = np.array(self.images, dtype=np.intp).reshape(-1)
        if images.size == 0:
            msg = "permutation must have positive size"
            raise ValueError(msg)
        if not np.array_equal(np.sort(images), np.arange(images.size)):
            msg = f"not a bijection on 0..{images.size - 1}: {images.tolist()!r}"
            raise ValueError(msg)
        images.flags.writeable = False
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, size: int) -> "IndexPermutation":
        return cls(np.arange(size))

    @classmethod
    def transposition(cls, size: int, i: int, j: int) -> "IndexPermutation":
        images = np.arange(size)
        images[[i, j]] = images[[j, i]]
        return cls(images)

    @property
    def size(self) -> int:
        return int(self.images.size)

    def __len__(self) -> int:
        return self.size

    def __call__(self, index: int) -> int:
        return int(self.images[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexPermutation):
            return NotImplemented
        return np.array_equal(self.images, other.images)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.size <= 16:
            return f"IndexPermutation({self.images.tolist()})"
        return f"IndexPermutation(size={self.size})"

    def is_identity(self) -> bool:
        return np.array_equal(self.images, np.arange(self.size))

    def compose(self, other: "IndexPermutation") -> "IndexPermutation":
        """Return ``self ∘ other``: apply ``other`` first."""
        if other.size != self.size:
            msg = f"cannot compose permutations of sizes {self.size} and {other.size}"
            raise ValueError(msg)
        return IndexPermutation(self.images[other.images])

    def inverse(self) -> "IndexPermutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.size)
        return IndexPermutation(inv)

    def kron(self, other: "IndexPermutation") -> "IndexPermutation":
        """Permutation of the unitary ``U_self ⊗ U_other``."""
        images = self.images[:, None] * other.size + other.images[None, :]
        return IndexPermutation(images.reshape(-1))

    def power(self, n: int) -> "IndexPermutation":
        """n-fold Kronecker power."""
        if n < 1:
            msg = f"tensor power must be >= 1, got {n}"
            raise ValueError(msg)
        result = self
        for _ in range(n - 1):
            result = result.kron(self)
        return result

    def conjugate_by(self, outer: "IndexPermutation") -> "IndexPermutation":
        """Return ``outer ∘ self ∘ outer⁻¹``, i.e. ``U_outer U_self U_outer*``."""
        return outer.compose(self).compose(outer.inverse())

    def one_based(self) -> list[int]:
        return [int(x) + 1 for x in self.images]


def _validate_radices(radices: Sequence[int]) -> Radices:
    result = tuple(int(r) for r in radices)
    if not result or any(r < 1 for r in result):
        msg = f"radices must be a non-empty list of positive integers, got {list(radices)!r}"
        raise ValueError(msg)
    return result


def factor_permutation(radices: Sequence[int], sigma: Sequence[int]) -> IndexPermutation:
    """Index permutation that moves tensor factor ``s`` to position ``sigma[s-1]``.

    Positions are 1-based, as in ``sigma = (1, 3, 2, 4)`` for the interleave
    ``x1 ⊗ y1 ⊗ x2 ⊗ y2 ↦ x1 ⊗ x2 ⊗ y1 ⊗ y2``. The result sends the composite
    index of ``x_1 ⊗ ... ⊗ x_k`` (radices as given) to the composite index of
    the reordered product, whose radices are :func:`permuted_radices`.
    """
    radices = _validate_radices(radices)
    targets = [int(s) - 1 for s in sigma]
    if sorted(targets) != list(range(len(radices))):
        msg = f"sigma must be a bijection on 1..{len(radices)}, got {list(sigma)!r}"
        raise ValueError(msg)

    # Factor at new position t is the old factor sigma^{-1}(t).
    axes = [0] * len(targets)
    for old, new in enumerate(targets):
        axes[new] = old
    old_at_new = np.arange(prod(radices)).reshape(radices).transpose(axes).reshape(-1)
    images = np.empty_like(old_at_new)
    images[old_at_new] = np.arange(old_at_new.size)
    return IndexPermutation(images)


def permuted_radices(radices: Sequence[int], sigma: Sequence[int]) -> Radices:
    """Radices after moving factor ``s`` to position ``sigma[s-1]`` (1-based)."""
    result = [0] * len(radices)
    for old, new in enumerate(sigma):
        result[int(new) - 1] = int(radices[old])
    return tuple(result)


def flip_permutation(n: int, m: int) -> IndexPermutation:
    """The flip ``C^n ⊗ C^m → C^m ⊗ C^n``: row-major ``(i, j) ↦ (j, i)``."""
    return factor_permutation((n, m), (2, 1))


def leg_embed_permutation(
    perm: IndexPermutation,
    radices: Sequence[int],
    p: int,
    q: int,
) -> IndexPermutation:
    """``perm`` acting on factors ``p < q`` (1-based) and as identity elsewhere."""
    radices = _validate_radices(radices)
    if not 1 <= p < q <= len(radices):
        msg = f"need 1 <= p < q <= {len(radices)}, got p={p}, q={q}"
        raise ValueError(msg)
    p, q = p - 1, q - 1
    rq = radices[q]
    if perm.size != radices[p] * rq:
        msg = f"size {perm.size} permutation cannot act on factors {radices[p]} x {rq}"
        raise ValueError(msg)
    digits = list(np.unravel_index(np.arange(prod(radices)), radices))
    moved = perm.images[digits[p] * rq + digits[q]]
    digits[p], digits[q] = moved // rq, moved % rq
    return IndexPermutation(np.ravel_multi_index(tuple(digits), radices))
