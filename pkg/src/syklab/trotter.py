"""Lie-Trotter-Suzuki schedules and Trotterized evolution.

A schedule is the flattened product formula S_l(tau): an ordered sequence of
steps (a_j, b_j) meaning "apply exp(i * a_j * tau * H_gamma(b_j))", listed in
application order (steps[0] acts on the state first).  The recursion

    S_{2p}(tau) = S_{2p-2}(q_p tau)^2 S_{2p-2}((1-4q_p) tau) S_{2p-2}(q_p tau)^2,
    q_p = 1 / (4 - 4**(1/(2p-1))),

flattens to Upsilon = 2 * 5**(l/2 - 1) sweeps per round, each sweep a forward
or reverse pass over all Gamma terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fermions import hilbert_dim, term_operator
from .linalg import evolution_factory, schatten_norm
from .model import SykInstance
from .pauli import _coefficients, apply_exponential_state

__all__ = [
    "Schedule",
    "stage_count",
    "build_schedule",
    "trotterized",
    "observed_error",
    "fixed_state_error",
]


def stage_count(order: int) -> int:
    """Number of sweeps Upsilon per round: 1 for l=1, 2*5**(l/2-1) for even l."""
    if order == 1:
        return 1
    if order >= 2 and order % 2 == 0:
        return 2 * 5 ** (order // 2 - 1)
    raise ValueError(f"order must be 1 or even >= 2, got {order}")


@dataclass(frozen=True)
class Schedule:
    """Flattened product formula S_l for Gamma terms."""

    order: int
    stages: int
    gamma_count: int
    steps: tuple[tuple[float, int], ...]  # (coefficient a_j, 1-based term b_j)


def _sweep_scales(order: int) -> list[tuple[float, bool]]:
    """List of (scale, forward?) sweeps in application order for even order."""
    if order == 2:
        # S_2(tau) = (reverse sweep at tau/2)(forward sweep at tau/2):
        # applied to a state, the reverse sweep acts first.
        return [(0.5, False), (0.5, True)]
    p = order // 2
    q = 1.0 / (4.0 - 4.0 ** (1.0 / (2 * p - 1)))
    inner = _sweep_scales(order - 2)
    out: list[tuple[float, bool]] = []
    for block_scale in (q, q, 1.0 - 4.0 * q, q, q):
        out.extend((block_scale * s, fwd) for s, fwd in inner)
    return out


def build_schedule(order: int, gamma_count: int) -> Schedule:
    """Schedule for S_l over ``gamma_count`` terms; order 1 or even >= 2."""
    stages = stage_count(order)  # validates the order
    if gamma_count < 1:
        raise ValueError("gamma_count must be positive")
    if order == 1:
        steps = tuple((1.0, b) for b in range(1, gamma_count + 1))
    else:
        steps_list: list[tuple[float, int]] = []
        for scale, forward in _sweep_scales(order):
            terms = range(1, gamma_count + 1) if forward else range(gamma_count, 0, -1)
            steps_list.extend((scale, b) for b in terms)
        steps = tuple(steps_list)
    assert len(steps) == stages * gamma_count
    return Schedule(order, stages, gamma_count, steps)


def _term_data(instance: SykInstance) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-term signed-permutation data (perm, permuted coefficients)."""
    data = []
    for edge in instance.ordering().edges:
        perm, coeff = _coefficients(term_operator(edge, instance.n).pauli)
        data.append((perm, coeff[perm]))
    return data


def _round_matrix(
    instance: SykInstance, schedule: Schedule, tau: float
) -> np.ndarray:
    """One round S_l(tau) as a dense matrix, built column-block-wise by
    applying each step exponential to the accumulating matrix."""
    dim = hilbert_dim(instance.n)
    terms = _term_data(instance)
    mat = np.eye(dim, dtype=complex)
    mask = instance.mask
    couplings = instance.couplings
    for a_j, b_j in schedule.steps:
        i = b_j - 1
        if mask is not None and mask[i] == 0:
            continue
        theta = a_j * couplings[i] * tau
        if theta == 0.0:
            continue
        perm, pcoeff = terms[i]
        mat = np.cos(theta) * mat + (1j * np.sin(theta)) * (
            pcoeff[:, None] * mat[perm]
        )
    return mat


def _matrix_power(mat: np.ndarray, power: int) -> np.ndarray:
    """Repeated-squaring power for the r rounds S_l(t/r)**r."""
    result = np.eye(mat.shape[0], dtype=complex)
    base = mat
    while power:
        if power & 1:
            result = base @ result
        base = base @ base
        power >>= 1
    return result


def trotterized(
    instance: SykInstance, schedule: Schedule, t: float, r: int
) -> np.ndarray:
    """S_l(t/r)**r as a dense unitary."""
    if schedule.gamma_count != instance.gamma_count:
        raise ValueError(
            f"schedule has {schedule.gamma_count} terms, instance has "
            f"{instance.gamma_count}"
        )
    if r < 1:
        raise ValueError("Trotter number r must be >= 1")
    return _matrix_power(_round_matrix(instance, schedule, t / r), r)


def observed_error(
    instance: SykInstance,
    order: int,
    t: float,
    r: int,
    p: float,
    exact: np.ndarray | None = None,
) -> float:
    """Normalized Trotter error ||exp(iHt) - S_l(t/r)**r||_p / D**(1/p).

    ``exact`` lets t-scans reuse one eigendecomposition-based evolution.
    """
    from .linalg import assemble, exact_evolution  # local to avoid cycle at import

    dim = hilbert_dim(instance.n)
    if exact is None:
        exact = exact_evolution(assemble(instance), t)
    schedule = build_schedule(order, instance.gamma_count)
    approx = trotterized(instance, schedule, t, r)
    if np.isinf(p):
        return schatten_norm(exact - approx, p)
    return schatten_norm(exact - approx, p) / dim ** (1.0 / p)


def fixed_state_error(
    instance: SykInstance,
    order: int,
    t: float,
    r: int,
    state: np.ndarray,
) -> float:
    """l2 norm of (exp(iHt) - S_l(t/r)**r) |state>, by state-vector sweeps.

    Cost is O(D) per Pauli exponential; no D x D matrix is formed for the
    product-formula side (the exact side still diagonalizes H once).
    """
    from .linalg import assemble

    state = np.asarray(state, dtype=complex)
    if abs(np.linalg.norm(state) - 1.0) > 1e-12:
        raise ValueError("input state must be normalized to 1 within 1e-12")
    exact_state = evolution_factory(assemble(instance))(t) @ state

    schedule = build_schedule(order, instance.gamma_count)
    terms = _term_data(instance)
    tau = t / r
    mask = instance.mask
    couplings = instance.couplings
    # Pre-resolve the per-step work once; repeat it r times.
    active = [
        (a_j * couplings[b_j - 1] * tau,) + terms[b_j - 1]
        for a_j, b_j in schedule.steps
        if not (mask is not None and mask[b_j - 1] == 0)
    ]
    psi = state
    for _ in range(r):
        for theta, perm, pcoeff in active:
            psi = apply_exponential_state(theta, perm, pcoeff, psi)
    return float(np.linalg.norm(exact_state - psi))
