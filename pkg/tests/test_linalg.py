"""Dense backend: assembly, evolution, Schatten norms, Monte-Carlo norms."""

import dataclasses
import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from syklab.fermions import hilbert_dim, term_operator
from syklab.linalg import (
    ResourceError,
    assemble,
    exact_evolution,
    evolution_factory,
    expected_norm,
    schatten_norm,
)
from syklab.model import sample_dense, sample_sparse
from syklab.pauli import to_dense


class TestAssemble:
    def test_zero_couplings(self):
        inst = sample_dense(6, 3, seed=1)
        zero = dataclasses.replace(inst, couplings=np.zeros_like(inst.couplings))
        assert np.array_equal(assemble(zero), np.zeros((8, 8)))

    def test_single_term(self):
        inst = sample_dense(6, 3, seed=2)
        couplings = np.zeros_like(inst.couplings)
        couplings[0] = 1.7
        single = dataclasses.replace(inst, couplings=couplings)
        edge = inst.ordering().edges[0]
        expected = 1.7 * to_dense(term_operator(edge, 6).pauli)
        assert np.allclose(assemble(single), expected)

    def test_sum_of_terms_matches_naive(self):
        inst = sample_dense(6, 2, seed=3)
        naive = sum(
            inst.couplings[i] * to_dense(term_operator(e, 6).pauli)
            for i, e in enumerate(inst.ordering().edges)
        )
        assert np.allclose(assemble(inst), naive, atol=1e-13)

    def test_hermitian(self):
        ham = assemble(sample_dense(6, 3, seed=4))
        assert np.linalg.norm(ham - ham.conj().T) < 1e-13 * np.linalg.norm(ham)

    def test_mask_respected(self):
        inst = sample_sparse(6, 3, kappa=2.0, seed=5)
        kept = sum(
            inst.couplings[i] * to_dense(term_operator(e, 6).pauli)
            for i, e in enumerate(inst.ordering().edges)
            if inst.mask[i]
        )
        if isinstance(kept, int):  # all masked out
            kept = np.zeros((8, 8))
        assert np.allclose(assemble(inst), kept, atol=1e-13)

    def test_dimension_cap(self):
        inst = sample_dense(12, 2, seed=6)
        with pytest.raises(ResourceError):
            assemble(inst, dim_cap=16)


class TestExactEvolution:
    def test_t_zero(self):
        ham = assemble(sample_dense(6, 3, seed=7))
        assert np.allclose(exact_evolution(ham, 0.0), np.eye(8), atol=1e-14)

    def test_diagonal_case(self):
        ham = np.diag([1.0, -1.0]).astype(complex)
        u = exact_evolution(ham, np.pi)
        assert np.allclose(u, -np.eye(2), atol=1e-12)

    def test_unitary_and_conserves_h(self):
        rng = np.random.default_rng(8)
        mat = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        ham = (mat + mat.conj().T) / 2
        u = exact_evolution(ham, 0.9)
        assert np.linalg.norm(u @ u.conj().T - np.eye(16)) < 1e-10
        assert np.linalg.norm(u.conj().T @ ham @ u - ham) < 1e-10

    def test_group_law(self):
        ham = assemble(sample_dense(8, 3, seed=9))
        u1 = exact_evolution(ham, 0.3)
        u2 = exact_evolution(ham, 1.1)
        u12 = exact_evolution(ham, 1.4)
        assert np.linalg.norm(u1 @ u2 - u12) < 1e-9

    def test_factory_reuses_decomposition(self):
        ham = assemble(sample_dense(6, 3, seed=10))
        evolve = evolution_factory(ham)
        for t in (0.1, 0.7):
            assert np.allclose(evolve(t), exact_evolution(ham, t), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            exact_evolution(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)


class TestSchattenNorm:
    def test_identity(self):
        for p in (2, 3, 4):
            assert schatten_norm(np.eye(8), p) == pytest.approx(8 ** (1 / p))
        assert schatten_norm(np.eye(8), np.inf) == pytest.approx(1.0)

    def test_unitary_spectral_norm(self):
        u = unitary_group.rvs(8, random_state=1)
        assert schatten_norm(u, np.inf) == pytest.approx(1.0, abs=1e-12)

    def test_p2_is_frobenius(self):
        rng = np.random.default_rng(11)
        mat = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        assert schatten_norm(mat, 2) == pytest.approx(
            math.sqrt((np.abs(mat) ** 2).sum()), rel=1e-12
        )

    def test_unitary_invariance(self):
        rng = np.random.default_rng(12)
        mat = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        u = unitary_group.rvs(8, random_state=2)
        v = unitary_group.rvs(8, random_state=3)
        for p in (2, 3, np.inf):
            assert schatten_norm(u @ mat @ v, p) == pytest.approx(
                schatten_norm(mat, p), rel=1e-10
            )

    def test_rejects_p_below_one(self):
        with pytest.raises(ValueError):
            schatten_norm(np.eye(2), 0.5)


class TestExpectedNorm:
    def test_identity_statistic(self):
        est = expected_norm(
            lambda i: None, lambda _: np.eye(8, dtype=complex), 2, 4
        )
        assert est.value == pytest.approx(math.sqrt(8))
        assert est.stderr == pytest.approx(0.0, abs=1e-14)

    def test_zero_statistic(self):
        est = expected_norm(
            lambda i: None, lambda _: np.zeros((4, 4)), 2, 4
        )
        assert est.value == 0.0 and est.stderr == 0.0

    def test_self_difference(self):
        def stat(inst):
            ham = assemble(inst)
            return exact_evolution(ham, 1.0) - exact_evolution(ham, 1.0)

        est = expected_norm(lambda i: sample_dense(6, 3, seed=13, sample_index=i),
                            stat, 2, 3)
        assert est.value == 0.0

    def test_worker_invariance(self):
        def sampler(i):
            return sample_dense(6, 3, seed=14, sample_index=i)

        def stat(inst):
            return assemble(inst)

        serial = expected_norm(sampler, stat, 2, 8, workers=1)
        parallel = expected_norm(sampler, stat, 2, 8, workers=8)
        assert serial.value == parallel.value
        assert serial.stderr == parallel.stderr

    def test_stderr_shrinks_with_samples(self):
        def sampler(i):
            return sample_dense(6, 2, seed=15, sample_index=i)

        small = expected_norm(sampler, assemble, 2, 24)
        large = expected_norm(sampler, assemble, 2, 96)
        # ratio should be ~ 1/2; allow generous statistical slack
        assert large.stderr < small.stderr

    def test_requires_two_samples(self):
        with pytest.raises(ValueError):
            expected_norm(lambda i: None, lambda _: np.eye(2), 2, 1)
