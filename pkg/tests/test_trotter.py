"""Schedules and Trotterized evolution, against straight-line reimplementations."""

import dataclasses
import math

import numpy as np
import pytest
from scipy.linalg import expm

from syklab.fermions import hilbert_dim, term_operator
from syklab.linalg import assemble, exact_evolution
from syklab.model import sample_dense, sample_sparse
from syklab.pauli import to_dense
from syklab.trotter import (
    build_schedule,
    fixed_state_error,
    observed_error,
    stage_count,
    trotterized,
)


class TestSchedule:
    def test_first_order_forward_sweep(self):
        sched = build_schedule(1, 3)
        assert sched.steps == ((1.0, 1), (1.0, 2), (1.0, 3))
        assert sched.stages == 1

    def test_second_order_reverse_then_forward(self):
        sched = build_schedule(2, 2)
        assert sched.steps == ((0.5, 2), (0.5, 1), (0.5, 1), (0.5, 2))
        assert sched.stages == 2

    @pytest.mark.parametrize("order,expected", [(1, 1), (2, 2), (4, 10), (6, 50)])
    def test_stage_counts(self, order, expected):
        assert stage_count(order) == expected
        assert len(build_schedule(order, 3).steps) == expected * 3

    @pytest.mark.parametrize("order", [2, 4, 6])
    def test_per_term_coefficients_sum_to_one(self, order):
        gamma = 4
        sched = build_schedule(order, gamma)
        sums = {b: 0.0 for b in range(1, gamma + 1)}
        for a, b in sched.steps:
            sums[b] += a
        for total in sums.values():
            assert total == pytest.approx(1.0, abs=1e-14)

    def test_rejects_odd_order(self):
        with pytest.raises(ValueError):
            build_schedule(3, 2)


def _naive_product(instance, order, t, r):
    """Straight-line oracle: dense expm per factor, repeated r times."""
    dim = hilbert_dim(instance.n)
    edges = instance.ordering().edges
    sched = build_schedule(order, len(edges))
    round_mat = np.eye(dim, dtype=complex)
    for a, b in sched.steps:
        if instance.mask is not None and instance.mask[b - 1] == 0:
            continue
        ham_b = instance.couplings[b - 1] * to_dense(term_operator(edges[b - 1], instance.n).pauli)
        round_mat = expm(1j * a * (t / r) * ham_b) @ round_mat
    total = np.eye(dim, dtype=complex)
    for _ in range(r):
        total = round_mat @ total
    return total


class TestTrotterized:
    def test_single_term_is_exact(self):
        inst = sample_dense(6, 3, seed=20)
        couplings = np.zeros_like(inst.couplings)
        couplings[7] = inst.couplings[7]
        single = dataclasses.replace(inst, couplings=couplings)
        exact = exact_evolution(assemble(single), 1.3)
        for order, r in ((1, 1), (2, 3), (4, 2)):
            sched = build_schedule(order, single.gamma_count)
            approx = trotterized(single, sched, 1.3, r)
            assert np.linalg.norm(exact - approx) < 1e-12

    def test_t_zero_is_identity(self):
        inst = sample_dense(6, 2, seed=21)
        sched = build_schedule(2, inst.gamma_count)
        assert np.allclose(trotterized(inst, sched, 0.0, 4), np.eye(8))

    @pytest.mark.parametrize("order", [1, 2])
    def test_matches_naive_expm_product(self, order):
        inst = sample_dense(6, 3, seed=22)
        sched = build_schedule(order, inst.gamma_count)
        ours = trotterized(inst, sched, 0.8, 3)
        naive = _naive_product(inst, order, 0.8, 3)
        assert np.linalg.norm(ours - naive) < 1e-10

    def test_sparse_masked_terms_skipped(self):
        inst = sample_sparse(6, 3, kappa=2.0, seed=23)
        sched = build_schedule(2, inst.gamma_count)
        ours = trotterized(inst, sched, 0.5, 2)
        naive = _naive_product(inst, 2, 0.5, 2)
        assert np.linalg.norm(ours - naive) < 1e-10

    def test_unitarity(self):
        for order in (1, 2, 4):
            inst = sample_dense(8, 4, seed=24)
            sched = build_schedule(order, inst.gamma_count)
            s = trotterized(inst, sched, 1.0, 8)
            assert np.linalg.norm(s @ s.conj().T - np.eye(16)) < 1e-10

    def test_gamma_mismatch(self):
        inst = sample_dense(6, 3, seed=25)
        with pytest.raises(ValueError):
            trotterized(inst, build_schedule(1, 5), 1.0, 1)


class TestObservedError:
    def test_t_zero(self):
        inst = sample_dense(6, 2, seed=26)
        assert observed_error(inst, 1, 0.0, 4, 2) == pytest.approx(0.0, abs=1e-13)

    def test_large_r_converges(self):
        inst = sample_dense(6, 2, seed=27)
        assert observed_error(inst, 2, 1.0, 10**4, 2) < 1e-6

    def test_matches_naive_reimplementation(self):
        inst = sample_dense(8, 4, seed=28)
        t, r = 1.0, 50
        ours = observed_error(inst, 1, t, r, 2)
        exact = exact_evolution(assemble(inst), t)
        naive = np.linalg.norm(exact - _naive_product(inst, 1, t, r)) / math.sqrt(16)
        assert ours == pytest.approx(naive, abs=1e-10)

    @pytest.mark.parametrize("order", [1, 2])
    def test_convergence_order(self, order):
        inst = sample_dense(8, 4, seed=29)
        exact = exact_evolution(assemble(inst), 1.0)
        errs = {
            r: observed_error(inst, order, 1.0, r, 2, exact=exact)
            for r in (64, 128, 256, 512)
        }
        for r in (64, 128, 256):
            ratio = errs[r] / errs[2 * r]
            assert 0.85 * 2**order <= ratio <= 1.15 * 2**order

    def test_second_order_beats_first(self):
        inst = sample_dense(8, 3, seed=30)
        exact = exact_evolution(assemble(inst), 1.0)
        e1 = observed_error(inst, 1, 1.0, 64, 2, exact=exact)
        e2 = observed_error(inst, 2, 1.0, 64, 2, exact=exact)
        assert e2 <= e1

    def test_error_in_valid_range(self):
        inst = sample_dense(6, 3, seed=31)
        err = observed_error(inst, 1, 50.0, 3, 2)
        assert 0.0 <= err <= 2.0

    def test_spectral_norm_variant(self):
        inst = sample_dense(6, 3, seed=32)
        err_inf = observed_error(inst, 1, 1.0, 16, np.inf)
        err_2 = observed_error(inst, 1, 1.0, 16, 2)
        assert err_inf >= err_2  # normalized p=2 is dominated by p=inf


class TestFixedStateError:
    def test_t_zero(self):
        inst = sample_dense(6, 2, seed=33)
        state = np.zeros(8, dtype=complex)
        state[0] = 1.0
        assert fixed_state_error(inst, 1, 0.0, 2, state) == pytest.approx(0.0, abs=1e-13)

    def test_matches_dense_matrices(self):
        inst = sample_dense(8, 3, seed=34)
        rng = np.random.default_rng(35)
        state = rng.normal(size=16) + 1j * rng.normal(size=16)
        state /= np.linalg.norm(state)
        got = fixed_state_error(inst, 2, 1.0, 7, state)
        exact = exact_evolution(assemble(inst), 1.0)
        sched = build_schedule(2, inst.gamma_count)
        ref = np.linalg.norm((exact - trotterized(inst, sched, 1.0, 7)) @ state)
        assert got == pytest.approx(ref, abs=1e-10)

    def test_dominated_by_spectral_error(self):
        inst = sample_dense(6, 3, seed=36)
        rng = np.random.default_rng(37)
        state = rng.normal(size=8) + 1j * rng.normal(size=8)
        state /= np.linalg.norm(state)
        fixed = fixed_state_error(inst, 1, 1.0, 9, state)
        spectral = observed_error(inst, 1, 1.0, 9, np.inf)
        assert fixed <= spectral + 1e-10

    def test_rejects_unnormalized(self):
        inst = sample_dense(6, 2, seed=38)
        with pytest.raises(ValueError):
            fixed_state_error(inst, 1, 1.0, 2, np.ones(8, dtype=complex))


def test_term_order_changes_s_but_not_u():
    """A permuted sweep order gives a different S for the same exact U."""
    from syklab.trotter import Schedule

    inst = sample_dense(6, 3, seed=39)
    gamma = inst.gamma_count
    rng = np.random.default_rng(40)
    perm = rng.permutation(gamma)
    sched_lex = build_schedule(1, gamma)
    sched_perm = Schedule(1, 1, gamma, tuple((1.0, int(b) + 1) for b in perm))
    t, r = 1.0, 8
    s_lex = trotterized(inst, sched_lex, t, r)
    s_perm = trotterized(inst, sched_perm, t, r)
    assert np.linalg.norm(s_lex - s_perm) > 1e-8  # S depends on the order
    exact = exact_evolution(assemble(inst), t)  # U does not
    for s in (s_lex, s_perm):
        err = np.linalg.norm(exact - s) / math.sqrt(8)
        assert 0.0 <= err <= 2.0
        assert np.linalg.norm(s @ s.conj().T - np.eye(8)) < 1e-10
