"""Jordan-Wigner representation of Majorana fermions and k-local term operators.

Convention (pinned for reproducibility; any representation obeying
{chi_i, chi_j} = 2 delta_ij would do):

    chi_{2j-1} = Z_1 ... Z_{j-1} X_j
    chi_{2j}   = Z_1 ... Z_{j-1} Y_j

n Majoranas act on n/2 qubits, so the Hilbert-space dimension is D = 2**(n/2).
A hyperedge {i_1 < ... < i_k} maps to the Hermitian, involutory term operator

    K = i**(k(k-1)/2) * chi_{i_1} ... chi_{i_k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .pauli import PauliString, is_hermitian, multiply

__all__ = ["jordan_wigner", "term_operator", "TermOperator", "hilbert_dim"]


def _check_n(n: int) -> None:
    if n < 2 or n % 2 != 0:
        raise ValueError(f"number of Majoranas must be even and >= 2, got {n}")


def hilbert_dim(n: int) -> int:
    """Dimension D = 2**(n/2) of the space carrying n Majorana fermions."""
    _check_n(n)
    return 1 << (n // 2)


def jordan_wigner(index: int, n: int) -> PauliString:
    """Pauli string of Majorana chi_index (1-based) among n Majoranas."""
    _check_n(n)
    if not 1 <= index <= n:
        raise ValueError(f"Majorana index {index} out of range [1, {n}]")
    num_qubits = n // 2
    site = (index + 1) // 2  # qubit carrying the X or Y factor, 1-based
    z_string = (1 << (site - 1)) - 1  # Z on qubits 1 .. site-1
    bit = 1 << (site - 1)
    if index % 2 == 1:  # chi_{2j-1} = Z...Z X_j
        return PauliString(num_qubits, bit, z_string, 0)
    # chi_{2j} = Z...Z Y_j with Y = i X Z
    return PauliString(num_qubits, bit, z_string | bit, 1)


@dataclass(frozen=True)
class TermOperator:
    """A k-local SYK term: its hyperedge and the Pauli string it maps to."""

    hyperedge: tuple[int, ...]
    pauli: PauliString


def term_operator(hyperedge: Sequence[int], n: int) -> TermOperator:
    """Hermitian term operator i**(k(k-1)/2) chi_{i_1}...chi_{i_k}.

    ``hyperedge`` must be strictly increasing with entries in [1, n].
    """
    _check_n(n)
    edge = tuple(hyperedge)
    if not edge:
        raise ValueError("hyperedge must be non-empty")
    if any(not 1 <= i <= n for i in edge):
        raise ValueError(f"hyperedge {edge} has entries outside [1, {n}]")
    if any(a >= b for a, b in zip(edge, edge[1:])):
        raise ValueError(f"hyperedge {edge} must be strictly increasing")
    k = len(edge)
    prod = reduce(multiply, (jordan_wigner(i, n) for i in edge))
    prefactor = (k * (k - 1) // 2) % 4
    pauli = PauliString(
        prod.num_qubits, prod.x_mask, prod.z_mask, (prod.phase_exp + prefactor) % 4
    )
    assert is_hermitian(pauli), "term operator construction must be Hermitian"
    return TermOperator(edge, pauli)
