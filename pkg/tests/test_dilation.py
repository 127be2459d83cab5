"""Unitary dilations: flavors, mode counts, purity, equivalence moves."""

import numpy as np
import pytest

from gcl import (
    GaussianChannel,
    UnitaryDilation,
    additive_noise,
    attenuator,
    canonical_dilation,
    canonical_dilation_S,
    dilate_case_i,
    dilate_ideal_like,
    dilate_pure,
    dilate_reduced_mixed,
    dilate_reduced_pure,
    dilation_residual,
    general_G_dilation_S,
    is_pure,
    rank_invariants,
    transform_dilation,
    weak_complement,
)
from gcl.sampling import random_channel, random_covariance, random_symplectic
from gcl.symplectic import direct_sum, is_symplectic, symplectic_form

FLAVORS = (dilate_case_i, dilate_pure, dilate_reduced_pure, dilate_reduced_mixed)


def _check_roundtrip(d, ch, rng, count=10, tol=1e-8):
    gammas = [random_covariance(ch.n_in, rng) for _ in range(count)]
    assert dilation_residual(d, ch, gammas) <= tol


def test_case_i_attenuator():
    ch = attenuator(0.7, occupation=0.4)
    d = dilate_case_i(ch)
    assert d.ell == 1
    assert not d.pure
    _check_roundtrip(d, ch, np.random.default_rng(0))
    # vacuum environment is pure
    d0 = dilate_case_i(attenuator(0.7))
    assert d0.pure
    assert is_pure(d0.gamma_E, sigma=d0.sigma_E)


def test_case_i_rejects_rank_deficient():
    with pytest.raises(ValueError, match="rank deficient"):
        dilate_case_i(additive_noise(np.eye(2)))


def test_flavor_mode_counts():
    # engineered channels hitting each (r, r') pair on two modes
    eta, N = 0.36, 0.7
    y = (1.0 - eta) * (2.0 * N + 1.0)
    two_zero = GaussianChannel(
        2, 2, np.diag([np.sqrt(eta), 1.0, np.sqrt(eta), 1.0]),
        np.diag([y, 0.0, y, 0.0]))
    four_two = GaussianChannel(
        2, 2, 0.8 * np.eye(4), np.diag([0.36, 0.72, 0.36, 0.72]))
    cases = [
        # (channel, r, r', ell_pure, ell_mixed)
        (attenuator(0.7), 2, 2, 1, 1),
        (attenuator(0.7, occupation=1.0), 2, 0, 2, 1),
        (two_zero, 2, 0, 4, 3),
        (four_two, 4, 2, 3, 2),
    ]
    for ch, r, rp, ell_pure, ell_mixed in cases:
        inv = rank_invariants(ch)
        assert (inv.r, inv.r_prime) == (r, rp)
        n = ch.n_in
        dp = dilate_reduced_pure(ch)
        dm = dilate_reduced_mixed(ch)
        assert dp.ell == 2 * n - rp // 2 == ell_pure
        assert dm.ell == 2 * n - r // 2 == ell_mixed
        assert dp.pure
        full = dilate_pure(ch)
        assert full.ell == 2 * n
        assert full.pure


def test_roundtrip_all_flavors_random():
    rng = np.random.default_rng(42)
    for n in (1, 2):
        for _ in range(10):
            ch = random_channel(n, rng)
            for flavor in (dilate_pure, dilate_reduced_pure, dilate_reduced_mixed):
                d = flavor(ch)
                _check_roundtrip(d, ch, rng)
                form = direct_sum(symplectic_form(n), d.sigma_E)
                assert is_symplectic(d.S, form, tol=1e-8)


def test_pure_flavor_environment_is_pure():
    rng = np.random.default_rng(8)
    for n in (1, 2):
        for _ in range(10):
            ch = random_channel(n, rng)
            for flavor in (dilate_pure, dilate_reduced_pure):
                d = flavor(ch)
                assert d.pure
                assert is_pure(d.gamma_E, sigma=d.sigma_E)


def test_reduced_mixed_purity_flag():
    # minimal-noise channel: every skew eigenvalue of the whitened
    # noise form is 1, so even the smallest dilation stays pure
    d = dilate_reduced_mixed(attenuator(0.7))
    assert d.pure
    d = dilate_reduced_mixed(attenuator(0.7, occupation=0.5))
    assert not d.pure


def test_ideal_like_channel_and_spectrum():
    rng = np.random.default_rng(5)
    n = 2
    F3 = rng.standard_normal((n, n)) + 2.0 * np.eye(n)
    d = dilate_ideal_like(n, F3)
    ch = d.channel()
    np.testing.assert_allclose(ch.X, np.eye(2 * n), atol=1e-10)
    # noise supported on the P sector only
    np.testing.assert_allclose(ch.Y[:n, :n], np.zeros((n, n)), atol=1e-10)
    w = np.linalg.eigvalsh(ch.Y)
    assert np.count_nonzero(w > 1e-10) == n


def test_ideal_like_thermal_environment():
    # gamma_E = diag(2N+1, 2M+1, 2N+1, 2M+1) leaks its P block into Y
    N, M = 0.5, 1.0
    d = dilate_ideal_like(2, np.eye(2), gamma_E=np.diag([2 * N + 1, 2 * M + 1,
                                                         2 * N + 1, 2 * M + 1]))
    Y = d.channel().Y
    np.testing.assert_allclose(Y, np.diag([0.0, 0.0, 2 * N + 1, 2 * M + 1]),
                               atol=1e-10)


def test_canonical_dilation_S_shape_and_symplectic():
    J = np.array([[2.0, 1.0], [0.0, 2.0]])
    S = canonical_dilation_S(J)
    assert S.shape == (8, 8)
    assert is_symplectic(S, direct_sum(symplectic_form(2), symplectic_form(2)))
    # top-left block is the transpose of X = [[1, 0], [0, J^T]]
    np.testing.assert_allclose(S[:2, :2], np.eye(2))
    np.testing.assert_allclose(S[2:4, 2:4], J)


def test_canonical_dilation_S_rejections():
    with pytest.raises(ValueError, match="unit eigenvalue"):
        canonical_dilation_S(np.eye(2))
    with pytest.raises(ValueError, match="invertible"):
        canonical_dilation_S(np.zeros((2, 2)))


def test_general_G_matches_canonical_at_minus_J():
    rng = np.random.default_rng(33)
    for _ in range(10):
        J = rng.standard_normal((2, 2)) + 2.5 * np.eye(2)
        if abs(np.linalg.det(J)) < 0.1 or np.any(np.abs(np.linalg.eigvals(J) - 1) < 0.1):
            continue
        np.testing.assert_allclose(general_G_dilation_S(J, -J),
                                   canonical_dilation_S(J), atol=1e-10)
        # other G stay symplectic and dilate the same channel
        G = rng.standard_normal((2, 2)) + 3.0 * np.eye(2)
        S = general_G_dilation_S(J, G)
        assert is_symplectic(S, direct_sum(symplectic_form(2), symplectic_form(2)),
                             tol=1e-7)
        np.testing.assert_allclose(S[:4, :4], canonical_dilation_S(J)[:4, :4],
                                   atol=1e-12)


def test_canonical_dilation_reproduces_channel():
    rng = np.random.default_rng(9)
    J = np.array([[1.6, 0.0], [0.0, 0.4]])
    N = 0.3
    d = canonical_dilation(J, (2 * N + 1) * np.eye(4))
    ch = d.channel()
    np.testing.assert_allclose(ch.X, direct_sum(np.eye(2), J.T), atol=1e-12)
    _check_roundtrip(d, ch, rng)


def test_transform_dilation_keeps_channel():
    rng = np.random.default_rng(14)
    ch = attenuator(0.6, occupation=0.8)
    d = dilate_case_i(ch)
    V = random_symplectic(d.ell, rng)
    W = random_symplectic(d.ell, rng)
    d2 = transform_dilation(d, V, W)
    _check_roundtrip(d2, ch, rng)
    # complement is conjugated by W
    comp = weak_complement(d)
    comp2 = weak_complement(d2)
    np.testing.assert_allclose(comp2.X, comp.X @ W.T, atol=1e-10)
    np.testing.assert_allclose(comp2.Y, W @ comp.Y @ W.T, atol=1e-10)


def test_transform_dilation_rejects_nonsymplectic():
    d = dilate_case_i(attenuator(0.6))
    with pytest.raises(ValueError, match="V must be symplectic"):
        transform_dilation(d, 2 * np.eye(2), np.eye(2))


def test_block_permuted_dilation_swaps_roles():
    # moving the environment rows on top swaps channel and complement
    ch = attenuator(0.6, occupation=0.2)
    d = dilate_case_i(ch)
    S_swap = np.block([[d.s3, d.s4], [d.s1, d.s2]])
    d_swap = UnitaryDilation(n=d.n, ell=d.ell, S=S_swap, gamma_E=d.gamma_E,
                             sigma_E=d.sigma_E, pure=d.pure)
    comp = weak_complement(d_swap)
    np.testing.assert_allclose(comp.X, ch.X, atol=1e-10)
    np.testing.assert_allclose(comp.Y, ch.Y, atol=1e-10)


def test_dilation_validates_inputs():
    with pytest.raises(ValueError, match="symplectic"):
        UnitaryDilation(n=1, ell=1, S=np.eye(4) * 2, gamma_E=np.eye(2),
                        sigma_E=symplectic_form(1), pure=False)
    with pytest.raises(ValueError, match="uncertainty"):
        UnitaryDilation(n=1, ell=1, S=np.eye(4), gamma_E=0.5 * np.eye(2),
                        sigma_E=symplectic_form(1), pure=False)


def test_dilation_rejects_non_cp_channel():
    bad = GaussianChannel(1, 1, np.sqrt(0.5) * np.eye(2), np.zeros((2, 2)))
    for flavor in FLAVORS:
        with pytest.raises(ValueError, match="completely positive"):
            flavor(bad)
