"""Brute-force combinatorics of nested-commutator chains.

Everything here is oracle-grade: literal enumeration at small sizes, used to
verify the counting lemmas behind the higher-order bounds.

For a chain (j_0, ..., j_{g-1}) over a set of m Pauli terms, the nested
commutator L_{j_{g-1}} ... L_{j_1}[H_{j_0}] (L_a = [H_a, .]) is nonzero iff
at every step the next term anticommutes with the accumulated product, since
a commutator of Pauli strings is either 0 or 2x their product.

G_w(H) = sum over weight vectors w_vec with |w_vec| = w of
    ( sum over pi in S_g, v_vec with |w_vec| + 2|v_vec| = g of
        ind(pi[eta(w_vec, 2 v_vec)]) )^2,

with eta the unary encoding (term i repeated w_vec_i times, then term j
repeated 2 v_vec_j times).  The Bernoulli average <G_w> weights each w_vec
by prod_{i in Supp(w_vec)} b_i outside the square and each v_vec by
prod_{j in Supp(v_vec) \\ Supp(w_vec)} b_j inside; the mask enumeration below
realizes this literally and is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Sequence

import numpy as np

from .fermions import term_operator
from .pauli import PauliString, commutes

__all__ = [
    "TermSet",
    "AntiCommutationGraph",
    "syk_termset",
    "indicator",
    "q_max",
    "gw_bruteforce",
    "avg_gw_exact",
    "lemma_d_bound",
    "lemma_e_bound",
    "build_graph",
    "greedy_coloring",
]

MAX_CHAIN_LENGTH = 5
MAX_TERMS_GW = 6
MAX_TERMS_AVG = 5


@dataclass(frozen=True)
class TermSet:
    """m Hermitian Pauli terms (any pair commutes or anticommutes)."""

    terms: tuple[PauliString, ...]

    @property
    def m(self) -> int:
        return len(self.terms)


def syk_termset(n: int, k: int, edges: Sequence[Sequence[int]] | None = None) -> TermSet:
    """Termset of SYK term operators; all C(n,k) hyperedges by default."""
    if edges is None:
        edges = list(combinations(range(1, n + 1), k))
    return TermSet(tuple(term_operator(e, n).pauli for e in edges))


def _anticommutes(a: PauliString, b: PauliString) -> bool:
    return not commutes(a, b)


def indicator(chain: Sequence[int], terms: TermSet) -> int:
    """1 iff the nested commutator over ``chain`` (0-based indices,
    chain[0] innermost) is nonzero."""
    if len(chain) == 0:
        raise ValueError("chain must be non-empty")
    acc = terms.terms[chain[0]]
    for j in chain[1:]:
        nxt = terms.terms[j]
        if commutes(nxt, acc):
            return 0
        acc = nxt * acc
    return 1


def q_max(terms: TermSet) -> int:
    """max over terms of the number of anticommuting partners."""
    ts = terms.terms
    return max(
        (sum(_anticommutes(a, b) for b in ts if b is not a) for a in ts),
        default=0,
    )


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All nonnegative integer vectors of given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_guards(terms: TermSet, g: int, w: int, max_terms: int) -> None:
    if g > MAX_CHAIN_LENGTH:
        raise ValueError(f"cost guard: chain length g <= {MAX_CHAIN_LENGTH}")
    if terms.m > max_terms:
        raise ValueError(f"cost guard: m <= {max_terms} terms")
    if not 0 <= w <= g:
        raise ValueError(f"need 0 <= w <= g, got w={w}, g={g}")


def _unary(vec: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(vec) for _ in range(c))


def _chain_sum(
    terms: TermSet, g: int, w_vec: tuple[int, ...], weights: Sequence[float],
    w_support: frozenset[int], cache: dict,
) -> float:
    """sum over pi, v_vec of (inner Bernoulli weight) * ind(pi[eta])."""
    m = terms.m
    total = 0.0
    for v_vec in _compositions((g - sum(w_vec)) // 2, m):
        inner_weight = 1.0
        for j, c in enumerate(v_vec):
            if c > 0 and j not in w_support:
                inner_weight *= weights[j]
        if inner_weight == 0.0:
            continue
        eta = _unary(w_vec) + _unary(tuple(2 * c for c in v_vec))
        count = cache.get(eta)
        if count is None:
            count = sum(indicator(chain, terms) for chain in permutations(eta))
            cache[eta] = count
        total += inner_weight * count
    return total


def gw_bruteforce(terms: TermSet, g: int, w: int) -> int:
    """Exact G_w(H) by full enumeration (guards: g <= 5, m <= 6)."""
    _check_guards(terms, g, w, MAX_TERMS_GW)
    if (g - w) % 2 != 0:
        return 0
    ones = [1.0] * terms.m
    cache: dict = {}
    total = 0.0
    for w_vec in _compositions(w, terms.m):
        inner = _chain_sum(terms, g, w_vec, ones, frozenset(), cache)
        total += inner * inner
    return round(total)


def avg_gw_exact(terms: TermSet, g: int, w: int, p_b: float) -> float:
    """Exact Bernoulli expectation <G_w(H(B))> by enumerating all 2^m masks."""
    _check_guards(terms, g, w, MAX_TERMS_AVG)
    if not 0.0 <= p_b <= 1.0:
        raise ValueError("p_B must lie in [0, 1]")
    if (g - w) % 2 != 0:
        return 0.0
    m = terms.m
    cache: dict = {}
    w_vecs = list(_compositions(w, m))
    expectation = 0.0
    for bits in range(1 << m):
        b = [(bits >> i) & 1 for i in range(m)]
        ones = b.count(1)
        prob = p_b**ones * (1.0 - p_b) ** (m - ones)
        if prob == 0.0:
            continue
        value = 0.0
        for w_vec in w_vecs:
            support = frozenset(i for i, c in enumerate(w_vec) if c > 0)
            outer = 1.0
            for i in support:
                outer *= b[i]
            if outer == 0.0:
                continue
            inner = _chain_sum(terms, g, w_vec, [float(x) for x in b], support, cache)
            value += outer * inner * inner
        expectation += prob * value
    return expectation


def lemma_d_bound(g: int, m: int, qmax: int) -> float:
    """Counting bound G_w <= g^(3g-2) m^2 Q_max^(g-2) (Q_max^0 = 1)."""
    exponent = g - 2
    if qmax == 0:
        if exponent == 0:
            qpow = 1.0
        elif exponent > 0:
            qpow = 0.0
        else:
            qpow = math.inf
    else:
        qpow = float(qmax) ** exponent
    return float(g) ** (3 * g - 2) * m**2 * qpow


def lemma_e_bound(g: int, w: int, m: int, qmax: int, p_b: float) -> float:
    """Averaged bound <G_w> <= g^(4g) m^2 Q_max^(-2)
    * sum_{s<=w} sum_{q,q'<=(g-w)/2} sum_{c<=min(q,q')} (p_B Q_max)^(s+q+q'-c)."""
    if qmax <= 0:
        raise ValueError("lemma_e_bound needs Q_max >= 1")
    half = (g - w) // 2
    total = 0.0
    for s in range(w + 1):
        for qa in range(half + 1):
            for qb in range(half + 1):
                for c in range(min(qa, qb) + 1):
                    total += (p_b * qmax) ** (s + qa + qb - c)
    return float(g) ** (4 * g) * m**2 * total / qmax**2


@dataclass(frozen=True)
class AntiCommutationGraph:
    """Simple graph on term indices; edge (i, j) iff terms anticommute."""

    adjacency: np.ndarray  # boolean m x m matrix

    @property
    def num_vertices(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def degree(self, v: int) -> int:
        return int(self.adjacency[v].sum())


def build_graph(terms: TermSet) -> AntiCommutationGraph:
    """Anti-commutation graph via vectorized symplectic parities."""
    m = terms.m
    x = np.array([t.x_mask for t in terms.terms], dtype=np.uint64)
    z = np.array([t.z_mask for t in terms.terms], dtype=np.uint64)
    overlap = np.bitwise_count(x[:, None] & z[None, :]) + np.bitwise_count(
        z[:, None] & x[None, :]
    )
    adj = (overlap % 2).astype(bool)
    np.fill_diagonal(adj, False)
    return AntiCommutationGraph(adj)


def greedy_coloring(graph: AntiCommutationGraph, order: str = "natural") -> int:
    """Sequential greedy coloring; returns the number of colors used.

    ``order`` is "natural" (vertex index) or "degree" (degree-descending).
    Always uses at most maxdegree + 1 colors.
    """
    m = graph.num_vertices
    if order == "natural":
        sequence = range(m)
    elif order == "degree":
        degrees = graph.adjacency.sum(axis=1)
        sequence = np.argsort(-degrees, kind="stable")
    else:
        raise ValueError(f"unknown vertex order {order!r}")
    colors = np.full(m, -1, dtype=np.int64)
    for v in sequence:
        neighbor_colors = colors[graph.adjacency[v]]
        used = set(neighbor_colors[neighbor_colors >= 0].tolist())
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return int(colors.max()) + 1 if m else 0
