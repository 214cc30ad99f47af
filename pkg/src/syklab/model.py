"""Hyperedge ordering and sampling of dense and sparse SYK instances.

The dense model is

    H = i**(k(k-1)/2) * sum_{i_1 < ... < i_k} J_{i_1...i_k} chi_{i_1}...chi_{i_k}

with i.i.d. couplings J ~ N(0, sigma**2), sigma**2 = (k-1)! J0**2 / (k n**(k-1))
for energy constant J0.  The sparse model keeps each term with probability
p_B = min(1, kappa*n / C(n,k)) and rescales the coupling variance by 1/p_B to
keep the model extensive.

Randomness: every stream is a counter-based Philox generator keyed by
(master_seed, stream_tag, sample_index), so disorder averages are independent
of worker count and evaluation order.  Gaussians are drawn by inverse-CDF
(scipy.special.ndtri) on the counter stream; that pins the map from uniforms
to normals, so the *statistics* are reproducible across ports even though
bit-exactness is only promised within one build.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.special import ndtri

__all__ = [
    "OrderingMap",
    "SykInstance",
    "ordering_map",
    "sigma_dense",
    "bernoulli_probability",
    "sample_dense",
    "sample_sparse",
    "stream_rng",
    "to_json",
    "from_json",
]


def _validate_nk(n: int, k: int) -> None:
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")


@dataclass(frozen=True)
class OrderingMap:
    """Lexicographic enumeration gamma of all C(n,k) hyperedges, 1-based,
    extended periodically: gamma(r + q*Gamma) = gamma(r)."""

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    @property
    def gamma_count(self) -> int:
        return len(self.edges)

    def gamma(self, i: int) -> tuple[int, ...]:
        """Hyperedge gamma(i) for 1-based i, periodic in i."""
        return self.edges[(i - 1) % len(self.edges)]


def ordering_map(n: int, k: int) -> OrderingMap:
    _validate_nk(n, k)
    edges = tuple(combinations(range(1, n + 1), k))
    return OrderingMap(n, k, edges)


def sigma_dense(n: int, k: int, energy_constant: float = 1.0) -> float:
    """Per-term standard deviation of the dense model couplings."""
    _validate_nk(n, k)
    if energy_constant <= 0:
        raise ValueError("energy constant must be positive")
    return math.sqrt(
        math.factorial(k - 1) * energy_constant**2 / (k * float(n) ** (k - 1))
    )


def bernoulli_probability(n: int, k: int, kappa: float) -> tuple[float, bool]:
    """Sparse keep-probability p_B = kappa*n/C(n,k), clamped at 1.

    Returns (p_B, clamped).  The clamp handles the small-n corner where
    kappa*n exceeds the number of available terms.
    """
    _validate_nk(n, k)
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    raw = kappa * n / math.comb(n, k)
    return min(1.0, raw), raw > 1.0


@dataclass(frozen=True)
class SykInstance:
    """One sampled Hamiltonian: couplings (and, if sparse, the Bernoulli mask)."""

    n: int
    k: int
    energy_constant: float
    sigma: float
    couplings: np.ndarray
    mask: np.ndarray | None = None
    p_B: float | None = None
    seed: int = 0
    clamped: bool = field(default=False)

    @property
    def gamma_count(self) -> int:
        return len(self.couplings)

    @property
    def is_sparse(self) -> bool:
        return self.mask is not None

    def ordering(self) -> OrderingMap:
        return ordering_map(self.n, self.k)


_STREAM_TAGS = (
    "dense_couplings",
    "sparse_mask",
    "sparse_couplings",
    "state",
    "scan_point",
)


def stream_rng(master_seed: int, stream_tag: str, sample_index: int) -> np.random.Generator:
    """Counter-based (Philox) generator keyed by (seed, tag, index)."""
    tag_id = zlib.crc32(stream_tag.encode("utf-8"))
    seq = np.random.SeedSequence(entropy=[int(master_seed), tag_id, int(sample_index)])
    return np.random.Generator(np.random.Philox(seq))


def _gaussian(rng: np.random.Generator, sigma: float, size: int) -> np.ndarray:
    """Inverse-CDF Gaussians on the counter stream (see module docstring)."""
    u = rng.random(size)
    np.clip(u, np.finfo(float).tiny, None, out=u)  # ndtri(0) = -inf guard
    return sigma * ndtri(u)


def sample_dense(
    n: int, k: int, energy_constant: float = 1.0, seed: int = 0, sample_index: int = 0
) -> SykInstance:
    """Sample a dense SYK instance; deterministic given (seed, sample_index)."""
    sigma = sigma_dense(n, k, energy_constant)
    gamma_count = math.comb(n, k)
    rng = stream_rng(seed, "dense_couplings", sample_index)
    couplings = _gaussian(rng, sigma, gamma_count)
    return SykInstance(n, k, energy_constant, sigma, couplings, seed=seed)


def sample_bernoulli_mask(
    n: int, k: int, kappa: float, seed: int = 0, sample_index: int = 0
) -> tuple[np.ndarray, float, bool]:
    """Sample just the sparse mask; returns (mask, p_B, clamped)."""
    p_b, clamped = bernoulli_probability(n, k, kappa)
    gamma_count = math.comb(n, k)
    rng = stream_rng(seed, "sparse_mask", sample_index)
    mask = (rng.random(gamma_count) < p_b).astype(np.int8)
    return mask, p_b, clamped


def sample_sparse(
    n: int,
    k: int,
    energy_constant: float = 1.0,
    kappa: float = 4.0,
    seed: int = 0,
    mask_index: int = 0,
    coupling_index: int = 0,
    mask: np.ndarray | None = None,
) -> SykInstance:
    """Sample a sparse SYK instance.

    The mask and coupling streams are keyed separately so drivers can hold a
    mask fixed (``mask=...`` or a fixed ``mask_index``) while redrawing the
    Gaussian disorder, as required by the nested sparse averaging.
    """
    p_b, clamped = bernoulli_probability(n, k, kappa)
    if mask is None:
        mask, p_b, clamped = sample_bernoulli_mask(n, k, kappa, seed, mask_index)
    else:
        mask = np.asarray(mask, dtype=np.int8)
    gamma_count = math.comb(n, k)
    if len(mask) != gamma_count:
        raise ValueError(f"mask length {len(mask)} != C(n,k) = {gamma_count}")
    if p_b == 0.0:
        sigma = 0.0
        couplings = np.zeros(gamma_count)
    else:
        sigma = sigma_dense(n, k, energy_constant) / math.sqrt(p_b)
        rng = stream_rng(seed, "sparse_couplings", coupling_index)
        couplings = _gaussian(rng, sigma, gamma_count)
    return SykInstance(
        n, k, energy_constant, sigma, couplings, mask=mask, p_B=p_b, seed=seed,
        clamped=clamped,
    )


def to_json(instance: SykInstance) -> str:
    """Serialize an instance to JSON; round-trips exactly."""
    doc = {
        "n": instance.n,
        "k": instance.k,
        "energy_constant": instance.energy_constant,
        "sigma": instance.sigma,
        "couplings": instance.couplings.tolist(),
        "mask": None if instance.mask is None else instance.mask.tolist(),
        "p_B": instance.p_B,
        "seed": instance.seed,
        "clamped": instance.clamped,
    }
    return json.dumps(doc)


def from_json(text: str) -> SykInstance:
    doc = json.loads(text)
    return SykInstance(
        n=doc["n"],
        k=doc["k"],
        energy_constant=doc["energy_constant"],
        sigma=doc["sigma"],
        couplings=np.asarray(doc["couplings"], dtype=float),
        mask=None if doc["mask"] is None else np.asarray(doc["mask"], dtype=np.int8),
        p_B=doc["p_B"],
        seed=doc["seed"],
        clamped=doc["clamped"],
    )
