"""Dense complex matrices: matrix units, Kronecker products, conjugation, legs.

Operators are ``numpy`` arrays of dtype complex128. Functions that only act on
the last two axes also accept stacks of shape ``(k, d, d)``, which is how the
checkers sweep whole rows of matrix units at once. Inputs are never mutated.
"""

from collections.abc import Callable, Sequence
from math import prod

import numpy as np
import numpy.typing as npt

from wcs_workbench.core.tensor.permutation import (
    IndexPermutation,
    factor_permutation,
    flip_permutation,
    permuted_radices,
)

ComplexMatrix = npt.NDArray[np.complex128]
LinearMap = Callable[[ComplexMatrix], ComplexMatrix]


def _dim(x: ComplexMatrix) -> int:
    if x.ndim < 2 or x.shape[-1] != x.shape[-2]:
        msg = f"expected a square matrix (or a stack of them), got shape {x.shape}"
        raise ValueError(msg)
    return int(x.shape[-1])


def matrix_unit(n: int, i: int, j: int) -> ComplexMatrix:
    """The matrix unit ``E^{(n)}_{i,j}`` with 1-based ``i, j``."""
    if not (1 <= i <= n and 1 <= j <= n):
        msg = f"matrix unit indices ({i}, {j}) out of range 1..{n}"
        raise ValueError(msg)
    e = np.zeros((n, n), dtype=np.complex128)
    e[i - 1, j - 1] = 1
    return e


def identity(n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)


def adjoint(x: ComplexMatrix) -> ComplexMatrix:
    return np.conj(np.swapaxes(x, -1, -2))


def kron(x: ComplexMatrix, y: ComplexMatrix) -> ComplexMatrix:
    """Row-major Kronecker product: entry ``(m i + j, m i' + j') = x[i,i'] y[j,j']``."""
    return np.kron(x, y).astype(np.complex128, copy=False)


def permutation_to_matrix(p: IndexPermutation) -> ComplexMatrix:
    """The unitary ``U`` with ``U e_l = e_{p(l)}``."""
    u = np.zeros((p.size, p.size), dtype=np.complex128)
    u[p.images, np.arange(p.size)] = 1
    return u


def conjugate(u: ComplexMatrix | IndexPermutation, x: ComplexMatrix) -> ComplexMatrix:
    """Return ``U X U*``.

    For an :class:`IndexPermutation` this is a pure relabeling of entries,
    ``(U X U*)[p(r), p(c)] = X[r, c]``, with no floating-point arithmetic.
    """
    d = _dim(x)
    if isinstance(u, IndexPermutation):
        if u.size != d:
            msg = f"cannot conjugate a dimension {d} operator by a size {u.size} permutation"
            raise ValueError(msg)
        inv = u.inverse().images
        return x[..., inv, :][..., :, inv]
    if _dim(u) != d:
        msg = f"cannot conjugate a dimension {d} operator by a dimension {u.shape[-1]} unitary"
        raise ValueError(msg)
    return u @ x @ adjoint(u)


def flip(x: ComplexMatrix, n: int, m: int) -> ComplexMatrix:
    """The factor flip ``τ_{n,m}: M_n ⊗ M_m → M_m ⊗ M_n``."""
    return conjugate(flip_permutation(n, m), x)


def leg_embed(r: ComplexMatrix, radices: Sequence[int], p: int, q: int) -> ComplexMatrix:
    """``R_{pq}``: ``r`` on factors ``p < q`` (1-based), identity on the others."""
    radices = tuple(int(x) for x in radices)
    k = len(radices)
    if not 1 <= p < q <= k:
        msg = f"need 1 <= p < q <= {k}, got p={p}, q={q}"
        raise ValueError(msg)
    if _dim(r) != radices[p - 1] * radices[q - 1]:
        msg = (
            f"operator of dimension {r.shape[-1]} does not act on factors "
            f"{radices[p - 1]} x {radices[q - 1]}"
        )
        raise ValueError(msg)

    # Build r ⊗ I on the order (p, q, rest...) and move each factor home.
    order = [p, q, *(t for t in range(1, k + 1) if t not in (p, q))]
    rest = prod(radices[t - 1] for t in order[2:])
    staged = kron(r, identity(rest))
    staged_radices = tuple(radices[t - 1] for t in order)
    return conjugate(factor_permutation(staged_radices, order), staged)


def reorder_factors(
    x: ComplexMatrix, radices: Sequence[int], sigma: Sequence[int]
) -> tuple[ComplexMatrix, tuple[int, ...]]:
    """Move factor ``s`` of ``x`` to position ``sigma[s-1]``; return the new radices too."""
    return conjugate(factor_permutation(radices, sigma), x), permuted_radices(radices, sigma)


def max_abs_diff(x: ComplexMatrix, y: ComplexMatrix) -> float:
    """Entrywise sup-norm of ``x - y``: the workbench's equality metric."""
    if x.shape != y.shape:
        msg = f"shape mismatch: {x.shape} vs {y.shape}"
        raise ValueError(msg)
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x - y)))


def tensor_product_map(
    f: LinearMap,
    g: LinearMap,
    y: ComplexMatrix,
    left_dim: int,
    right_dim: int,
) -> ComplexMatrix:
    """Apply ``f ⊗ g`` to ``y ∈ M_left ⊗ M_right`` for linear maps ``f`` and ``g``.

    Uses ``y = Σ E_{s,s'} ⊗ y[s, :, s', :]`` and skips vanishing slices.
    """
    if _dim(y) != left_dim * right_dim or y.ndim != 2:
        msg = f"expected a single {left_dim * right_dim}-dimensional operator, got {y.shape}"
        raise ValueError(msg)
    blocks = y.reshape(left_dim, right_dim, left_dim, right_dim)
    result: ComplexMatrix | None = None
    for s in range(left_dim):
        for t in range(left_dim):
            block = blocks[s, :, t, :]
            if not block.any():
                continue
            term = kron(f(matrix_unit(left_dim, s + 1, t + 1)), g(block))
            result = term if result is None else result + term
    if result is None:
        # Images of zero; the zero operator fixes the output shape.
        zero_left = f(np.zeros((left_dim, left_dim), dtype=np.complex128))
        zero_right = g(np.zeros((right_dim, right_dim), dtype=np.complex128))
        return kron(zero_left, zero_right)
    return result
