"""Eventually periodic product states, their star product and equivalence.

Two pure product states with slot vectors ``xi_k`` and ``eta_k`` give unitarily
equivalent GNS representations exactly when ``sum_k (1 - |<xi_k, eta_k>|)``
converges. For eventually periodic data the tail of that series repeats, so
it converges iff every deficit over one aligned period vanishes.
"""

from collections.abc import Sequence
from math import lcm

import numpy as np
from loguru import logger

from wcs_workbench.config import DEFAULT_TOLERANCE, MAX_STATE_DIM
from wcs_workbench.core.tensor.algebra import ComplexMatrix
from wcs_workbench.core.verification import matrix_unit_rows
from wcs_workbench.core.wcs.power import phi_power
from wcs_workbench.errors import ensure_within_budget
from wcs_workbench.models.states import (
    EquivalenceVerdict,
    LevelDiagnostic,
    ProductStateDesc,
    SlotVector,
)


def diagonal_pure_state(n: int, i: int) -> ProductStateDesc:
    """The constant product state with every slot ``e_i`` (``omega(x) = x_ii`` per slot)."""
    return ProductStateDesc(slot_dim=n, prefix=(), period=(SlotVector.basis(n, i),))


def _aligned(s: ProductStateDesc, t: ProductStateDesc) -> tuple[int, int]:
    """Prefix length and period length after which both sequences repeat together."""
    return max(len(s.prefix), len(t.prefix)), lcm(len(s.period), len(t.period))


def star(s: ProductStateDesc, t: ProductStateDesc) -> ProductStateDesc:
    """Slotwise row-major Kronecker product, a state on ``M_{nm}^{⊗∞}``."""
    prefix_len, period_len = _aligned(s, t)
    slots = [
        SlotVector.from_array(np.kron(s.slot(k).as_array(), t.slot(k).as_array()))
        for k in range(1, prefix_len + period_len + 1)
    ]
    return ProductStateDesc(
        slot_dim=s.slot_dim * t.slot_dim,
        prefix=tuple(slots[:prefix_len]),
        period=tuple(slots[prefix_len:]),
    )


def rephase(
    desc: ProductStateDesc,
    prefix_phases: Sequence[float],
    period_phases: Sequence[float],
) -> ProductStateDesc:
    """Multiply each slot vector by ``exp(i theta)``; the state itself is unchanged."""
    if len(prefix_phases) != len(desc.prefix) or len(period_phases) != len(desc.period):
        msg = (
            f"need {len(desc.prefix)} prefix and {len(desc.period)} period phases, "
            f"got {len(prefix_phases)} and {len(period_phases)}"
        )
        raise ValueError(msg)

    def turn(v: SlotVector, theta: float) -> SlotVector:
        return SlotVector.from_array(np.exp(1j * theta) * v.as_array())

    return ProductStateDesc(
        slot_dim=desc.slot_dim,
        prefix=tuple(turn(v, th) for v, th in zip(desc.prefix, prefix_phases, strict=True)),
        period=tuple(turn(v, th) for v, th in zip(desc.period, period_phases, strict=True)),
    )


def slot_expectation(v: SlotVector, x: ComplexMatrix) -> complex:
    """``<v, x v>``."""
    if x.shape != (v.dim, v.dim):
        msg = f"operator of shape {x.shape} does not act on C^{v.dim}"
        raise ValueError(msg)
    a = v.as_array()
    return complex(np.vdot(a, x @ a))


def level_vector(s: ProductStateDesc, k: int) -> np.ndarray:
    """``xi_1 ⊗ ... ⊗ xi_k``."""
    if k < 1:
        msg = f"level must be >= 1, got {k}"
        raise ValueError(msg)
    ensure_within_budget(f"level {k} state", s.slot_dim**k, MAX_STATE_DIM)
    v = np.ones(1, dtype=np.complex128)
    for j in range(1, k + 1):
        v = np.kron(v, s.slot(j).as_array())
    return v


def finite_level_state(s: ProductStateDesc, k: int) -> ComplexMatrix:
    """Rank-one density matrix of the restriction to the first ``k`` slots."""
    v = level_vector(s, k)
    return np.outer(v, v.conj())


def equivalent(
    s: ProductStateDesc,
    t: ProductStateDesc,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
) -> EquivalenceVerdict:
    if s.slot_dim != t.slot_dim:
        msg = f"cannot compare states on M_{s.slot_dim} and M_{t.slot_dim}"
        raise ValueError(msg)
    prefix_len, period_len = _aligned(s, t)

    def deficit(k: int) -> float:
        overlap = abs(np.vdot(s.slot(k).as_array(), t.slot(k).as_array()))
        return max(0.0, 1.0 - float(overlap))

    prefix = tuple(deficit(k) for k in range(1, prefix_len + 1))
    period = tuple(deficit(k) for k in range(prefix_len + 1, prefix_len + period_len + 1))
    verdict = EquivalenceVerdict(
        equivalent=all(d <= tolerance for d in period),
        prefix_deficits=prefix,
        period_deficits=period,
        tolerance=tolerance,
    )
    logger.debug(
        "Equivalence: {} (prefix sum {:.3g}, max period deficit {:.3g})",
        verdict.equivalent,
        verdict.prefix_deficit_sum,
        max(period),
    )
    return verdict


def star_oracle_values(s: ProductStateDesc, t: ProductStateDesc, level: int) -> ComplexMatrix:
    """``(omega_s ⊗ omega_t)(phi^{(level)}(E_{r,c}))`` on units of ``M_{nm}^{⊗level}``.

    Entry ``[r, c]`` holds the value on ``E_{r+1,c+1}``. For a state with
    density matrix ``rho`` that value is ``rho[c, r]``, so the result equals
    the transpose of the star product's finite-level density matrix.
    """
    n, m = s.slot_dim, t.slot_dim
    rho = np.kron(finite_level_state(s, level), finite_level_state(t, level))
    d = (n * m) ** level
    ensure_within_budget(f"level {level} oracle", d, MAX_STATE_DIM)
    values = np.empty((d, d), dtype=np.complex128)
    for row, batch in matrix_unit_rows(d):
        images = phi_power(n, m, level, batch)
        values[row] = np.einsum("ij,kji->k", rho, images)
    return values


def level_diagnostics(
    left: ProductStateDesc, right: ProductStateDesc, levels: int
) -> tuple[LevelDiagnostic, ...]:
    """Overlap ``tr(rho sigma)`` and trace distance of the restrictions, level by level.

    Both restrictions are pure, so the trace distance is ``sqrt(1 - tr(rho sigma))``.
    """
    out: list[LevelDiagnostic] = []
    for k in range(1, levels + 1):
        v, w = level_vector(left, k), level_vector(right, k)
        overlap = float(abs(np.vdot(v, w)) ** 2)
        out.append(
            LevelDiagnostic(
                level=k,
                dim=v.size,
                overlap=overlap,
                trace_distance=float(np.sqrt(max(0.0, 1.0 - overlap))),
            )
        )
    return tuple(out)
