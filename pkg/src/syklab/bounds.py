"""Closed-form evaluators: Q(n,k), dense and sparse Trotter-error bounds,
concentration-based Trotter-number solver, gate counts, and log-log fits.

The dense bounds are

    Delta_1 = 4 sqrt(2) p^2 sigma^2 sqrt(C(n,k) Q) t^2 [1/(2r) + sigma sqrt(Q) t/(3 r^2)]

    Delta_l = C(l) sqrt(p) sigma t / sqrt(Q)
              * ( C(n,k) [sqrt(p) sigma sqrt(Q) t/r]^l
                + C(n,k)^2 [sqrt(p) sigma sqrt(Q) t/r]^(l+1) ),

with C(l) = A(l)/(l+1), A(l) = Upsilon^(l+3) (l+3)^(1/2) (l+2)^(3(l+2)-1).
The sparse (Bernoulli-averaged) bound has two regimes split at p_B*Q = 1 and
prefactor beta(l) = (l+3)^(5/2) (l+2)^(2(l+2)) * Upsilon^(l+3)
(l+2)^(3(l+2)/2) / (l+1).  Prefactors are evaluated in log space; the "unit"
prefactor mode replaces the purely l-dependent constant by 1 (the practice
used when plotting, where the constant is astronomically large).

The generalized-model entry points (``*_general``) take (Gamma, Q_max)
directly; the SYK wrappers specialize them with Gamma = C(n,k), Q = Q(n,k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import sigma_dense, bernoulli_probability
from .trotter import stage_count

__all__ = [
    "BoundInput",
    "BoundValue",
    "SolverInput",
    "q_of",
    "log_prefactor_higher",
    "log_prefactor_sparse",
    "delta1_general",
    "delta_l_general",
    "delta_l_sparse_general",
    "delta1_dense",
    "delta_l_dense",
    "delta_l_sparse",
    "solve_trotter_number",
    "gate_count",
    "error_ratio",
    "loglog_fit",
]


def q_of(n: int, k: int) -> int:
    """Number of hyperedges whose term anticommutes with a fixed hyperedge.

    Q(n,k) = sum over overlap sizes s of the right parity (odd for even k,
    even for odd k), max(0, k-(n-k)) <= s <= k-1, of C(n-k, k-s) * C(k, s).
    """
    if n < 2 or n % 2 != 0 or not 1 <= k <= n:
        raise ValueError(f"invalid (n, k) = ({n}, {k})")
    mu = max(0, k - (n - k))
    parity = 1 if k % 2 == 0 else 0
    return sum(
        math.comb(n - k, k - s) * math.comb(k, s)
        for s in range(mu, k)
        if s % 2 == parity
    )


@dataclass(frozen=True)
class BoundInput:
    """Parameter bundle for the bound evaluators."""

    n: int
    k: int
    l: int
    p: float
    t: float
    r: int
    energy_constant: float = 1.0
    sigma: float | None = None
    p_B: float | None = None
    kappa: float | None = None
    prefactor_mode: str = "full"  # "full" | "unit"

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError("norm order p must be >= 2")
        if self.t < 0:
            raise ValueError("time t must be nonnegative")
        if self.r < 1:
            raise ValueError("Trotter number r must be >= 1")
        if self.prefactor_mode not in ("full", "unit"):
            raise ValueError(f"unknown prefactor_mode {self.prefactor_mode!r}")

    def dense_sigma(self) -> float:
        if self.sigma is not None:
            return self.sigma
        return sigma_dense(self.n, self.k, self.energy_constant)

    def sparse_sigma(self) -> float:
        if self.sigma is not None:
            return self.sigma
        p_b = self.resolved_p_b()
        if p_b == 0.0:
            return 0.0
        return sigma_dense(self.n, self.k, self.energy_constant) / math.sqrt(p_b)

    def resolved_p_b(self) -> float:
        if self.p_B is not None:
            return self.p_B
        if self.kappa is not None:
            return bernoulli_probability(self.n, self.k, self.kappa)[0]
        raise ValueError("sparse bound needs p_B or kappa")


@dataclass(frozen=True)
class BoundValue:
    """An evaluated bound Delta, with the sparse regime when applicable."""

    value: float
    regime: str | None = None


def log_prefactor_higher(order: int, prefactor_mode: str = "full") -> float:
    """log C(l), C(l) = Upsilon^(l+3) (l+3)^(1/2) (l+2)^(3(l+2)-1) / (l+1)."""
    if prefactor_mode == "unit":
        return 0.0
    l = order
    ups = stage_count(l)
    return (
        (l + 3) * math.log(ups)
        + 0.5 * math.log(l + 3)
        + (3 * (l + 2) - 1) * math.log(l + 2)
        - math.log(l + 1)
    )


def log_prefactor_sparse(order: int, prefactor_mode: str = "full") -> float:
    """log beta(l) = log[(l+3)^(5/2) (l+2)^(2(l+2)) Upsilon^(l+3)
    (l+2)^(3(l+2)/2) / (l+1)]."""
    if prefactor_mode == "unit":
        return 0.0
    l = order
    ups = stage_count(l)
    return (
        2.5 * math.log(l + 3)
        + 2 * (l + 2) * math.log(l + 2)
        + (l + 3) * math.log(ups)
        + 1.5 * (l + 2) * math.log(l + 2)
        - math.log(l + 1)
    )


def delta1_general(
    gamma: int, q: int, sigma: float, p: float, t: float, r: int
) -> float:
    """First-order bound for a generalized Gaussian model with Gamma terms and
    anticommutation degree q."""
    if t == 0.0 or sigma == 0.0:
        return 0.0
    return (
        4.0
        * math.sqrt(2.0)
        * p**2
        * sigma**2
        * math.sqrt(gamma * q)
        * t**2
        * (1.0 / (2.0 * r) + sigma * math.sqrt(q) * t / (3.0 * r**2))
    )


def _check_even_order(order: int) -> None:
    if order < 2 or order % 2 != 0:
        raise ValueError(f"higher-order bound needs even l >= 2, got {order}")


def delta_l_general(
    gamma: int,
    q: int,
    sigma: float,
    order: int,
    p: float,
    t: float,
    r: int,
    prefactor_mode: str = "full",
) -> float:
    """Higher-order bound for a generalized Gaussian model (log-space eval)."""
    _check_even_order(order)
    if t == 0.0 or sigma == 0.0:
        return 0.0
    if q <= 0:
        raise ValueError("anticommutation degree q must be positive")
    l = order
    log_bracket = (
        0.5 * math.log(p) + math.log(sigma) + 0.5 * math.log(q)
        + math.log(t) - math.log(r)
    )
    log_common = (
        log_prefactor_higher(l, prefactor_mode)
        + 0.5 * math.log(p)
        + math.log(sigma)
        + math.log(t)
        - 0.5 * math.log(q)
    )
    term1 = math.log(gamma) + l * log_bracket
    term2 = 2.0 * math.log(gamma) + (l + 1) * log_bracket
    log_value = log_common + np.logaddexp(term1, term2)
    return float(np.exp(log_value))


def delta_l_sparse_general(
    gamma: int,
    q: int,
    sigma: float,
    p_b: float,
    order: int,
    p: float,
    t: float,
    r: int,
    prefactor_mode: str = "full",
) -> BoundValue:
    """Bernoulli-averaged sparse bound; ``sigma`` is the renormalized
    (1/sqrt(p_B)-inflated) per-term deviation.  The regime splits at
    p_B * q = 1; the two displays agree exactly on the boundary."""
    _check_even_order(order)
    if not 0.0 <= p_b <= 1.0:
        raise ValueError(f"p_B must lie in [0, 1], got {p_b}")
    if q <= 0:
        raise ValueError("anticommutation degree q must be positive")
    if t == 0.0 or sigma == 0.0 or p_b == 0.0:
        return BoundValue(0.0, regime="degenerate")
    l = order
    log_beta = log_prefactor_sparse(l, prefactor_mode)
    if p_b * q >= 1.0:
        log_bracket = (
            0.5 * math.log(p) + math.log(sigma)
            + 0.5 * math.log(p_b * q) + math.log(t) - math.log(r)
        )
        log_common = (
            log_beta + math.log(gamma) + 0.5 * math.log(p) + math.log(sigma)
            + 0.5 * math.log(p_b) + math.log(t) - 0.5 * math.log(q)
        )
        regime = "p_B*Q >= 1"
    else:
        log_bracket = (
            0.5 * math.log(p) + math.log(sigma) + math.log(t) - math.log(r)
        )
        log_common = (
            log_beta + math.log(gamma) + 0.5 * math.log(p) + math.log(sigma)
            + math.log(t) - math.log(q)
        )
        regime = "p_B*Q <= 1"
    term1 = l * log_bracket
    term2 = math.log(gamma) + (l + 1) * log_bracket
    log_value = log_common + np.logaddexp(term1, term2)
    return BoundValue(float(np.exp(log_value)), regime=regime)


def delta1_dense(inp: BoundInput) -> float:
    """Delta_1 for the dense SYK model."""
    if inp.l != 1:
        raise ValueError("delta1_dense requires l = 1")
    gamma = math.comb(inp.n, inp.k)
    return delta1_general(gamma, q_of(inp.n, inp.k), inp.dense_sigma(), inp.p, inp.t, inp.r)


def delta_l_dense(inp: BoundInput) -> float:
    """Delta_l for the dense SYK model (even l >= 2)."""
    gamma = math.comb(inp.n, inp.k)
    return delta_l_general(
        gamma, q_of(inp.n, inp.k), inp.dense_sigma(), inp.l, inp.p, inp.t, inp.r,
        inp.prefactor_mode,
    )


def delta_l_sparse(inp: BoundInput) -> BoundValue:
    """Average sparse-SYK bound (even l >= 2); needs p_B (or kappa)."""
    gamma = math.comb(inp.n, inp.k)
    return delta_l_sparse_general(
        gamma, q_of(inp.n, inp.k), inp.sparse_sigma(), inp.resolved_p_b(),
        inp.l, inp.p, inp.t, inp.r, inp.prefactor_mode,
    )


@dataclass(frozen=True)
class SolverInput:
    """Inputs for the concentration-inequality Trotter-number solver."""

    epsilon: float
    delta: float
    mode: str  # "operator_norm" | "fixed_state"
    family: str  # "dense_first" | "dense_higher" | "sparse"
    base: BoundInput  # r is ignored; p is replaced by p_star

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.mode not in ("operator_norm", "fixed_state"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.family not in ("dense_first", "dense_higher", "sparse"):
            raise ValueError(f"unknown bound family {self.family!r}")

    def p_star(self) -> float:
        """log(e^2 ||I||_p^p / delta): D = 2^(n/2) in operator mode, 1 fixed-state."""
        log_dim = 0.5 * self.base.n * math.log(2.0) if self.mode == "operator_norm" else 0.0
        return 2.0 + log_dim - math.log(self.delta)


class ContractError(RuntimeError):
    """The bound family violated the solver's monotonicity contract."""


def _lambda_factory(inp: SolverInput):
    """lambda(p, r) = Delta(p, r)/p for the selected bound family."""
    base = inp.base

    def lam(p: float, r: int) -> float:
        b = BoundInput(
            n=base.n, k=base.k, l=base.l, p=p, t=base.t, r=r,
            energy_constant=base.energy_constant, sigma=base.sigma,
            p_B=base.p_B, kappa=base.kappa, prefactor_mode=base.prefactor_mode,
        )
        if inp.family == "dense_first":
            return delta1_dense(b) / p
        if inp.family == "dense_higher":
            return delta_l_dense(b) / p
        return delta_l_sparse(b).value / p

    return lam


def _first_order_seed(inp: SolverInput, p_star: float) -> int:
    """Closed-form bracket start for the first-order family."""
    base = inp.base
    sigma = base.dense_sigma()
    gamma = math.comb(base.n, base.k)
    q = q_of(base.n, base.k)
    t = base.t
    x = math.e * 4.0 * math.sqrt(2.0) * p_star**2 * sigma**2 * math.sqrt(gamma * q) * t**2 / inp.epsilon
    seed = x / 2.0 + math.sqrt(max(0.0, x * sigma * math.sqrt(q) * t / 3.0))
    return max(1, math.ceil(seed))


def solve_trotter_number(inp: SolverInput) -> int:
    """Minimal Trotter number r with lambda(p_star, r)/epsilon <= 1/(e*p_star).

    p_star = log(e^2 2^(n/2)/delta) in operator_norm mode, log(e^2/delta) in
    fixed_state mode.  Exponential bracketing plus bisection; the first-order
    closed form seeds the bracket.  The result is verified by back
    substitution (and r-1 checked to violate the inequality).
    """
    p_star = inp.p_star()
    lam = _lambda_factory(inp)
    target = inp.epsilon / (math.e * p_star)

    if not lam(p_star, 1) > 0 or lam(p_star, 2) >= lam(p_star, 1):
        raise ContractError("lambda(p, r) must be positive and strictly decreasing in r")

    def ok(r: int) -> bool:
        return lam(p_star, r) <= target

    hi = _first_order_seed(inp, p_star) if inp.family == "dense_first" else 1
    while not ok(hi):
        hi *= 2
        if hi > 1 << 62:
            raise ContractError("no satisfying Trotter number below 2^62")
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    r = lo
    assert ok(r) and (r == 1 or not ok(r - 1))
    return r


def gate_count(
    order: int, gamma: int, r: int, overhead: str = "none", n: int | None = None
) -> float:
    """Gate complexity Upsilon(l) * Gamma * r, times the fermion-to-qubit
    overhead: 1 (none), log2(n) (ternary tree), or n (Jordan-Wigner)."""
    base = stage_count(order) * gamma * r
    if overhead == "none":
        return float(base)
    if n is None or n < 2:
        raise ValueError("overhead modes log_n/linear_n need n >= 2")
    if overhead == "log_n":
        return base * math.log2(n)
    if overhead == "linear_n":
        return float(base * n)
    raise ValueError(f"unknown overhead mode {overhead!r}")


def error_ratio(observed, bound: float) -> tuple[float, float]:
    """eta = observed/bound with propagated stderr; observed is a NormEstimate."""
    if bound <= 0:
        if observed.value == 0:
            return 0.0, 0.0
        raise ZeroDivisionError("error ratio undefined: bound is 0 with observed > 0")
    return observed.value / bound, observed.stderr / bound


def loglog_fit(points) -> tuple[float, float, float]:
    """Least-squares line through (ln x, ln y): returns (slope, intercept,
    RMS residual).  Needs >= 3 points with positive coordinates."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError("log-log fit needs at least 3 points")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("log-log fit needs positive coordinates")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    if np.ptp(lx) == 0:
        raise ValueError("degenerate fit: all x values equal")
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return float(slope), float(intercept), residual
