"""Tests for operator assembly: Toeplitz matrices, Berezin transforms,
shifts, module convolution, dilation, and norm estimates."""

import math

import numpy as np
import pytest

from focklab import engine
from focklab.fock import FockParams, MultiIndexBasis, OperatorMatrix, TruncatedVector
from focklab.symbols import Angular, CallableSymbol, Constant, Gaussian, PolyGaussian, dilate, heat_transform, translate

PARAMS = FockParams(1.0)


def basis_vec(basis, k):
    c = np.zeros(basis.dimension, dtype=complex)
    c[k] = 1.0
    return TruncatedVector(basis, c)


class TestToeplitzAssembly:
    def test_unit_symbol_is_identity(self):
        T = engine.toeplitz_matrix(Constant(1.0), PARAMS, 16)
        np.testing.assert_allclose(T.entries, np.eye(17), atol=1e-12)

    def test_gaussian_diagonal_closed_form(self):
        # T_{e^{-|z|^2/a}} is diagonal with d_k = (a/(a+t))^{k+1}
        a = 1.0
        T = engine.toeplitz_matrix(Gaussian(a), PARAMS, 25)
        ks = np.arange(26)
        np.testing.assert_allclose(np.diag(T.entries).real, 0.5 ** (ks + 1), rtol=1e-10)
        off = T.entries - np.diag(np.diag(T.entries))
        assert np.max(np.abs(off)) < 1e-12

    def test_linearity(self):
        f, g = Gaussian(1.0), Gaussian(0.7)
        Tsum = engine.toeplitz_matrix(
            PolyGaussian(((0, 0, 1.0),), 1.0), PARAMS, 12
        ).entries + engine.toeplitz_matrix(g, PARAMS, 12).entries
        from focklab.symbols import Sum

        Tboth = engine.toeplitz_matrix(Sum((f, g)), PARAMS, 12).entries
        np.testing.assert_allclose(Tboth, Tsum, atol=1e-11)

    def test_adjoint_of_conjugate_symbol(self):
        f = Angular(((1, 1.0),), 1.0)
        fbar = Angular(((-1, 1.0),), 1.0)
        A = engine.toeplitz_matrix(f, PARAMS, 14)
        B = engine.toeplitz_matrix(fbar, PARAMS, 14)
        np.testing.assert_allclose(B.entries, A.entries.conj().T, atol=1e-11)

    def test_angular_symbol_is_banded_shift(self):
        # e^{i m theta} populates only the m-th diagonal
        T = engine.toeplitz_matrix(Angular(((2, 1.0),), 1.0), PARAMS, 12)
        for d in range(-12, 13):
            diag = np.diagonal(T.entries, offset=-d)
            if d != 2:
                assert np.max(np.abs(diag)) < 1e-12


class TestBerezin:
    def test_identity_is_one(self):
        basis = MultiIndexBasis(PARAMS, 20)
        A = OperatorMatrix(basis, np.eye(basis.dimension))
        pts = np.array([0.0, 1.0 + 0.5j, -2.0j])
        np.testing.assert_allclose(engine.berezin(A, pts), 1.0, atol=1e-13)

    def test_toeplitz_berezin_equals_heat(self):
        f = Gaussian(1.0, 0.3 - 0.2j)
        T = engine.toeplitz_matrix(f, PARAMS, 32)
        pts = np.array([0.5, 1.0 + 1.0j, -1.5, 2.0j])
        np.testing.assert_allclose(
            engine.berezin(T, pts), heat_transform(f, 1.0, pts), atol=1e-9
        )

    def test_rank_one_vacuum(self):
        basis = MultiIndexBasis(PARAMS, 20)
        e0 = basis_vec(basis, 0)
        R = engine.rank_one(basis, e0, e0)
        pts = np.array([0.0, 0.7, 1.2j])
        np.testing.assert_allclose(engine.berezin(R, pts), np.exp(-np.abs(pts) ** 2), atol=1e-12)

    def test_k_s_closed_form(self):
        basis = MultiIndexBasis(PARAMS, 24)
        K = engine.k_s_matrix(basis, 0.5)
        pts = np.array([0.3, 1.0 + 0.2j])
        np.testing.assert_allclose(
            engine.berezin(K, pts), np.exp(-0.5 * np.abs(pts) ** 2), atol=1e-12
        )

    def test_exact_normalization_decays(self):
        basis = MultiIndexBasis(PARAMS, 10)
        A = OperatorMatrix(basis, np.eye(basis.dimension))
        # the zero-extended finite section is finite-rank, so its exact
        # Berezin transform vanishes at infinity
        val = engine.berezin(A, 6.0 + 0j, renormalize=False)
        assert abs(val) < 1e-3

    def test_berezin_symbol_wraps(self):
        T = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 16)
        sym = engine.berezin_symbol(T)
        assert sym.is_radial
        assert sym.sup_bound() == pytest.approx(0.5, rel=1e-6)


class TestShift:
    def test_zero_shift(self):
        T = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 12)
        np.testing.assert_allclose(engine.shift(T, 0.0).entries, T.entries, atol=1e-13)

    def test_shift_matches_translated_symbol(self):
        f = Gaussian(1.0)
        z0 = 0.5 + 0.3j
        A = engine.shift(engine.toeplitz_matrix(f, PARAMS, 24), z0)
        B = engine.toeplitz_matrix(translate(f, z0), PARAMS, 24)
        block = 6  # degree <= N/4: free of truncation effects at this |z|
        dim = MultiIndexBasis(PARAMS, block).dimension
        np.testing.assert_allclose(A.entries[:dim, :dim], B.entries[:dim, :dim], atol=1e-8)

    def test_berezin_covariance(self):
        A = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 24)
        z0 = 0.4 - 0.6j
        pts = np.array([0.0, 0.5 + 0.5j])
        np.testing.assert_allclose(
            engine.berezin(engine.shift(A, z0), pts), engine.berezin(A, pts - z0), atol=1e-9
        )


class TestModuleConv:
    def test_requires_gaussian_weight(self):
        A = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 8)
        with pytest.raises(TypeError):
            engine.module_conv(Constant(1.0), A)

    def test_smoothing_identity_gaussian(self):
        # g_t * T_f = T_{f~^{(t)}} for the exact finite-rank Berezin symbol
        from focklab.approximation import block_distance

        A = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 20)
        conv = engine.module_conv(Gaussian(1.0, 0.0, 1.0 / math.pi), A)
        T = engine.toeplitz_matrix(engine.berezin_symbol(A, renormalize=False), PARAMS, 20)
        assert block_distance(conv, T) < 1e-9

    def test_vacuum_convolution_is_quantization(self):
        from focklab.approximation import block_distance

        f = Gaussian(0.8)
        basis = MultiIndexBasis(PARAMS, 20)
        e0 = basis_vec(basis, 0)
        P0 = engine.rank_one(basis, e0, e0)
        conv = engine.module_conv(f, P0)
        scaled = OperatorMatrix(basis, conv.entries / math.pi)
        Tf = engine.toeplitz_matrix(f, PARAMS, 20)
        assert block_distance(scaled, Tf) < 1e-7


class TestDilation:
    def test_matrix_preserved_params_rescaled(self):
        A = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 12)
        B = engine.dilation_conjugate(A, 2.0)
        np.testing.assert_allclose(B.entries, A.entries)
        assert B.basis.params.t == pytest.approx(0.25)

    def test_dilation_lemma_entrywise(self):
        f = PolyGaussian(((1, 1, 0.5), (0, 0, 1.0)), 1.2)
        for lam in (0.5, 2.0):
            A = engine.dilation_conjugate(engine.toeplitz_matrix(f, PARAMS, 16), lam)
            B = engine.toeplitz_matrix(dilate(f, lam), A.basis.params, 16)
            np.testing.assert_allclose(A.entries, B.entries, atol=1e-9)

    def test_rejects_nonpositive(self):
        A = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 6)
        with pytest.raises(ValueError):
            engine.dilation_conjugate(A, -1.0)


class TestIntegralApply:
    def test_matches_coefficient_action(self):
        A = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 20)
        basis = A.basis
        v = TruncatedVector(basis, np.exp(-0.4 * np.arange(basis.dimension)) * (1 - 0.2j))
        pts = np.array([0.2 + 0.1j, -0.8, 0.5j])
        via_kernel = engine.integral_apply(A, lambda w: v.evaluate(w), pts)
        direct = A.apply(v).evaluate(pts)
        np.testing.assert_allclose(via_kernel, direct, atol=1e-10)


class TestNormEstimate:
    def test_identity_norms(self):
        basis = MultiIndexBasis(PARAMS, 12)
        I = OperatorMatrix(basis, np.eye(basis.dimension))
        for p in (1, 2, np.inf):
            est = engine.norm_estimate(I, p)
            assert est.lower <= 1.0 + 1e-9
            assert est.upper >= 1.0 - 1e-9

    def test_p2_exact_for_gaussian(self):
        T = engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 24)
        est = engine.norm_estimate(T, 2)
        np.testing.assert_allclose(est.lower, 0.5, rtol=1e-10)
        np.testing.assert_allclose(est.upper, 0.5, rtol=1e-10)

    def test_bracket_always_ordered(self):
        rng = np.random.default_rng(5)
        basis = MultiIndexBasis(PARAMS, 10)
        M = rng.standard_normal((11, 11)) + 1j * rng.standard_normal((11, 11))
        A = OperatorMatrix(basis, M)
        for p in (1, 2, np.inf):
            est = engine.norm_estimate(A, p)
            assert est.lower <= est.upper + 1e-12

    def test_p2_stabilizes_with_degree(self):
        n24 = engine.norm_estimate(engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 24), 2)
        n48 = engine.norm_estimate(engine.toeplitz_matrix(Gaussian(1.0), PARAMS, 48), 2)
        assert abs(n24.lower - n48.lower) < 1e-6
