"""Dense complex backend: Hamiltonian assembly, exact evolution, Schatten
norms, and the Monte-Carlo expected-norm estimator.

Everything here works on D x D complex matrices with D = 2**(n/2); the
default dimension cap (2**10) guards memory.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from .fermions import hilbert_dim, term_operator
from .model import SykInstance
from .pauli import _coefficients

__all__ = [
    "DEFAULT_DIM_CAP",
    "NormEstimate",
    "assemble",
    "exact_evolution",
    "evolution_factory",
    "schatten_norm",
    "expected_norm",
    "worker_count",
]

DEFAULT_DIM_CAP = 1 << 10


class ResourceError(RuntimeError):
    """Raised when a requested dense computation exceeds the dimension cap."""


def worker_count() -> int:
    """Worker pool size, from the SYKLAB_WORKERS environment variable."""
    try:
        return max(1, int(os.environ.get("SYKLAB_WORKERS", "1")))
    except ValueError:
        return 1


def assemble(instance: SykInstance, dim_cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """Dense Hermitian H = sum_i b_i J_i K_i (b_i = 1 when no mask).

    Each Pauli term is written into H along its signed permutation; the term
    matrices are never materialized individually.
    """
    dim = hilbert_dim(instance.n)
    if dim > dim_cap:
        raise ResourceError(
            f"dimension {dim} exceeds cap {dim_cap}; raise dim_cap explicitly"
        )
    ordering = instance.ordering()
    ham = np.zeros((dim, dim), dtype=complex)
    rows = np.arange(dim)
    for i, edge in enumerate(ordering.edges):
        if instance.mask is not None and instance.mask[i] == 0:
            continue
        coupling = instance.couplings[i]
        if coupling == 0.0:
            continue
        pauli = term_operator(edge, instance.n).pauli
        perm, coeff = _coefficients(pauli)
        ham[rows, perm] += coupling * coeff[perm]
    return ham


def exact_evolution(ham: np.ndarray, t: float, hermiticity_tol: float = 1e-10) -> np.ndarray:
    """U = exp(i*H*t) from the Hermitian eigendecomposition."""
    return evolution_factory(ham, hermiticity_tol)(t)


def evolution_factory(
    ham: np.ndarray, hermiticity_tol: float = 1e-10
) -> Callable[[float], np.ndarray]:
    """Return t -> exp(i*H*t), reusing one eigendecomposition across t values."""
    scale = np.linalg.norm(ham) or 1.0
    if np.linalg.norm(ham - ham.conj().T) > hermiticity_tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    evals, evecs = np.linalg.eigh(ham)

    def evolve(t: float) -> np.ndarray:
        phases = np.exp(1j * evals * t)
        return (evecs * phases) @ evecs.conj().T

    return evolve


def schatten_norm(mat: np.ndarray, p: float) -> float:
    """Schatten p-norm (sum of p-th powers of singular values)**(1/p).

    p = 2 is the Frobenius norm (no SVD); p = inf the largest singular value.
    """
    if p < 1:
        raise ValueError(f"Schatten order must satisfy p >= 1, got {p}")
    if p == 2:
        return float(np.linalg.norm(mat))
    svals = np.linalg.svd(mat, compute_uv=False)
    if np.isinf(p):
        return float(svals[0]) if len(svals) else 0.0
    return float(np.sum(svals**p) ** (1.0 / p))


class NormEstimate:
    """Monte-Carlo estimate of (E ||A||_p^p)**(1/p) with a delta-method stderr."""

    __slots__ = ("value", "stderr", "num_samples", "p")

    def __init__(self, value: float, stderr: float, num_samples: int, p: float):
        self.value = value
        self.stderr = stderr
        self.num_samples = num_samples
        self.p = p

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"NormEstimate(value={self.value!r}, stderr={self.stderr!r}, "
            f"num_samples={self.num_samples}, p={self.p})"
        )


def _pairwise_sum(values: Sequence[float]) -> float:
    """Fixed-order pairwise tree reduction (parallelism-invariant)."""
    vals = list(values)
    if not vals:
        return 0.0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def expected_norm(
    sampler: Callable[[int], object],
    statistic: Callable[[object], np.ndarray],
    p: float,
    num_samples: int,
    workers: int | None = None,
) -> NormEstimate:
    """Estimate (E ||statistic(sample_i)||_p^p)**(1/p) over disorder.

    ``sampler(i)`` must be pure in the sample index i, so the estimate is
    deterministic and independent of the worker count: per-sample values are
    gathered by index and reduced with a fixed-order pairwise tree.
    """
    if num_samples < 2:
        raise ValueError("need num_samples >= 2 for a standard error")
    if workers is None:
        workers = worker_count()

    def one(i: int) -> float:
        return schatten_norm(statistic(sampler(i)), p) ** p

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            powers = list(pool.map(one, range(num_samples)))
    else:
        powers = [one(i) for i in range(num_samples)]

    mean = _pairwise_sum(powers) / num_samples
    centered = [(x - mean) ** 2 for x in powers]
    var_mean = _pairwise_sum(centered) / (num_samples - 1) / num_samples
    sem = var_mean**0.5
    value = mean ** (1.0 / p) if mean > 0 else 0.0
    # delta method: d(m**(1/p))/dm = m**(1/p - 1)/p
    stderr = (mean ** (1.0 / p - 1.0) / p) * sem if mean > 0 else 0.0
    return NormEstimate(value, stderr, num_samples, p)
