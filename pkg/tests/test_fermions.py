"""Jordan-Wigner Majoranas and term operators: exact algebraic identities."""

from itertools import combinations

import numpy as np
import pytest

from syklab.fermions import hilbert_dim, jordan_wigner, term_operator
from syklab.pauli import commutes, is_hermitian, multiply, to_dense

from conftest import dense_oracle


def test_hilbert_dim():
    assert hilbert_dim(8) == 16
    with pytest.raises(ValueError):
        hilbert_dim(7)


def test_chi1_chi2_are_x_and_y_on_first_qubit():
    chi1 = jordan_wigner(1, 4)
    assert (chi1.x_mask, chi1.z_mask, chi1.phase_exp) == (1, 0, 0)
    chi2 = jordan_wigner(2, 4)
    # Y = i X Z in the symplectic convention
    assert (chi2.x_mask, chi2.z_mask, chi2.phase_exp) == (1, 1, 1)
    y = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(dense_oracle(chi2), np.kron(np.eye(2), y))


def test_out_of_range_index():
    with pytest.raises(ValueError):
        jordan_wigner(9, 8)
    with pytest.raises(ValueError):
        jordan_wigner(1, 5)  # odd n


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_majorana_anticommutation_exact(n):
    """{chi_i, chi_j} = 2 delta_ij, checked in exact integer algebra."""
    chis = [jordan_wigner(i, n) for i in range(1, n + 1)]
    for i, a in enumerate(chis):
        # chi_i**2 = I exactly
        sq = multiply(a, a)
        assert (sq.x_mask, sq.z_mask, sq.phase_exp) == (0, 0, 0)
        for b in chis[i + 1:]:
            # anti-commutator vanishes iff ab = -ba exactly
            ab, ba = multiply(a, b), multiply(b, a)
            assert (ab.x_mask, ab.z_mask) == (ba.x_mask, ba.z_mask)
            assert (ab.phase_exp - ba.phase_exp) % 4 == 2


def test_majorana_anticommutation_dense_n8():
    n = 8
    dim = hilbert_dim(n)
    dense = [to_dense(jordan_wigner(i, n)) for i in range(1, n + 1)]
    for i, a in enumerate(dense):
        for j, b in enumerate(dense):
            anti = a @ b + b @ a
            expected = 2 * np.eye(dim) if i == j else np.zeros((dim, dim))
            assert np.allclose(anti, expected, atol=1e-13)


class TestTermOperator:
    def test_k1_is_bare_majorana(self):
        term = term_operator((3,), 8)
        assert term.pauli == jordan_wigner(3, 8)

    def test_k2_prefactor_makes_hermitian(self):
        term = term_operator((1, 2), 4)
        mat = to_dense(term.pauli)
        assert np.allclose(mat, mat.conj().T)
        assert np.allclose(mat @ mat, np.eye(4))
        # i * chi1 chi2 from the dense side
        ref = 1j * dense_oracle(jordan_wigner(1, 4)) @ dense_oracle(jordan_wigner(2, 4))
        assert np.allclose(mat, ref)

    @pytest.mark.parametrize("n,k", [(6, 2), (6, 3), (8, 4), (10, 3)])
    def test_hermitian_involutory_unit_norm(self, n, k):
        rng = np.random.default_rng(n * 10 + k)
        edges = list(combinations(range(1, n + 1), k))
        for idx in rng.choice(len(edges), size=min(12, len(edges)), replace=False):
            mat = to_dense(term_operator(edges[idx], n).pauli)
            assert np.allclose(mat, mat.conj().T, atol=1e-13)
            assert np.allclose(mat @ mat, np.eye(len(mat)), atol=1e-13)
            svals = np.linalg.svd(mat, compute_uv=False)
            assert np.allclose(svals, 1.0, atol=1e-13)

    def test_rejects_unsorted_or_duplicate(self):
        with pytest.raises(ValueError):
            term_operator((2, 1), 4)
        with pytest.raises(ValueError):
            term_operator((1, 1), 4)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_anticommutation_sign_law(k):
    """T_a T_b = (-1)**(k+m) T_b T_a with m the hyperedge overlap (n = 8)."""
    n = 8
    edges = list(combinations(range(1, n + 1), k))
    terms = {e: term_operator(e, n).pauli for e in edges}
    for i, ea in enumerate(edges):
        for eb in edges[i:]:
            m = len(set(ea) & set(eb))
            should_commute = (k + m) % 2 == 0
            assert commutes(terms[ea], terms[eb]) == should_commute
            # and the exact product identity, not just the boolean
            ab = multiply(terms[ea], terms[eb])
            ba = multiply(terms[eb], terms[ea])
            assert (ab.x_mask, ab.z_mask) == (ba.x_mask, ba.z_mask)
            expected_shift = 0 if should_commute else 2
            assert (ab.phase_exp - ba.phase_exp) % 4 == expected_shift
