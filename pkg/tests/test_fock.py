"""Tests for the truncated-basis core: norms, kernels, Weyl matrices."""

import math

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss

from focklab.fock import (
    LITTLE_INFINITY,
    FockParams,
    MultiIndexBasis,
    OperatorMatrix,
    TruncatedVector,
    basis_norm,
    fp_norm,
    kernel_eval,
    kernel_expand,
    weyl_matrix,
)

PARAMS = FockParams(1.0)


def unit_vector(basis, k):
    c = np.zeros(basis.dimension, dtype=complex)
    c[k] = 1.0
    return TruncatedVector(basis, c)


class TestBasisStructure:
    def test_dimension_1d(self):
        assert MultiIndexBasis(PARAMS, 7).dimension == 8

    def test_dimension_multivariate(self):
        basis = MultiIndexBasis(FockParams(1.0, 2), 3)
        assert basis.dimension == math.comb(3 + 2, 2)

    def test_graded_order(self):
        basis = MultiIndexBasis(FockParams(1.0, 2), 2)
        degrees = basis.degrees
        assert all(b >= a for a, b in zip(degrees, degrees[1:]))

    def test_rejects_negative_degree(self):
        with pytest.raises(ValueError):
            MultiIndexBasis(PARAMS, -1)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            FockParams(-1.0)
        with pytest.raises(ValueError):
            FockParams(1.0, 0)
        with pytest.raises(ValueError):
            FockParams(1.0, 1, 3)


class TestBasisNorms:
    def test_two_norm_is_one(self):
        for k in range(20):
            assert basis_norm(PARAMS, k, 2) == 1.0

    def test_one_norm_closed_form(self):
        # ||e_k||_1 = 2^{k/2} Gamma(k/2+1) / sqrt(k!)
        for k in (1, 2, 5, 10):
            expected = 2 ** (k / 2) * math.gamma(k / 2 + 1) / math.sqrt(math.factorial(k))
            np.testing.assert_allclose(basis_norm(PARAMS, k, 1), expected, rtol=1e-13)

    def test_sup_norm_closed_form(self):
        # the weighted modulus r^k e^{-r^2/2}/sqrt(k!) peaks at r = sqrt(k)
        for k in (1, 2, 5, 10):
            expected = k ** (k / 2) * math.exp(-k / 2) / math.sqrt(math.factorial(k))
            np.testing.assert_allclose(basis_norm(PARAMS, k, np.inf), expected, rtol=1e-13)

    def test_norm_product_limit(self):
        # ||e_k||_1 ||e_k||_inf decreases to 1/sqrt(2)
        prods = [basis_norm(PARAMS, k, 1) * basis_norm(PARAMS, k, np.inf) for k in (10, 100, 1000)]
        assert prods[0] > prods[1] > prods[2] > 1 / math.sqrt(2)
        np.testing.assert_allclose(prods[-1], 1 / math.sqrt(2), atol=2e-4)

    def test_multi_index_factorizes(self):
        p2 = FockParams(1.0, 2)
        val = basis_norm(p2, (2, 3), 1)
        np.testing.assert_allclose(val, basis_norm(PARAMS, 2, 1) * basis_norm(PARAMS, 3, 1))

    def test_little_infinity_matches_sup(self):
        assert basis_norm(PARAMS, 4, LITTLE_INFINITY) == basis_norm(PARAMS, 4, np.inf)


class TestQuadratureNorms:
    def test_fp_norm_matches_closed_forms(self):
        basis = MultiIndexBasis(PARAMS, 12)
        for k in (0, 3, 9):
            v = unit_vector(basis, k)
            np.testing.assert_allclose(fp_norm(v, 1), basis_norm(PARAMS, k, 1), rtol=1e-9)
            np.testing.assert_allclose(fp_norm(v, np.inf), basis_norm(PARAMS, k, np.inf), rtol=1e-9)
            np.testing.assert_allclose(fp_norm(v, 2), 1.0, rtol=1e-12)

    def test_two_norm_pythagoras(self):
        basis = MultiIndexBasis(PARAMS, 6)
        c = np.zeros(basis.dimension, dtype=complex)
        c[1], c[4] = 3.0, 4.0j
        np.testing.assert_allclose(fp_norm(TruncatedVector(basis, c), 2), 5.0, rtol=1e-12)

    def test_scaling_homogeneity(self):
        basis = MultiIndexBasis(PARAMS, 8)
        v = unit_vector(basis, 5)
        w = TruncatedVector(basis, 2.5 * v.coeffs)
        for p in (1, 2, np.inf):
            np.testing.assert_allclose(fp_norm(w, p), 2.5 * fp_norm(v, p), rtol=1e-9)


class TestKernels:
    def test_kernel_symmetry(self):
        z, w = 0.5 + 0.2j, -0.3 + 1.0j
        np.testing.assert_allclose(
            kernel_eval(PARAMS, z, w), np.conj(kernel_eval(PARAMS, w, z)), rtol=1e-14
        )

    def test_kernel_diagonal(self):
        z = 1.2 - 0.7j
        np.testing.assert_allclose(
            kernel_eval(PARAMS, z, z), math.exp(abs(z) ** 2), rtol=1e-14
        )

    def test_normalized_kernel_unit_diagonal(self):
        z = 0.9 + 0.4j
        val = kernel_eval(PARAMS, z, z, normalized=True) * math.exp(-abs(z) ** 2 / 2)
        np.testing.assert_allclose(val, 1.0, rtol=1e-14)

    def test_reproducing_property(self):
        basis = MultiIndexBasis(PARAMS, 30)
        rng = np.random.default_rng(7)
        v = TruncatedVector(
            basis, rng.standard_normal(basis.dimension) + 1j * rng.standard_normal(basis.dimension)
        )
        for z in (0.4 + 0.1j, -1.0, 1.5j):
            kz, _ = kernel_expand(PARAMS, basis, z)
            np.testing.assert_allclose(np.vdot(kz.coeffs, v.coeffs), v.evaluate(z), atol=1e-10)

    def test_expansion_norm_and_tail(self):
        basis = MultiIndexBasis(PARAMS, 24)
        z = 1.0 + 1.0j
        kz, tail = kernel_expand(PARAMS, basis, z)
        total = math.exp(abs(z) ** 2)
        np.testing.assert_allclose(
            float(np.sum(np.abs(kz.coeffs) ** 2)) + tail**2, total, rtol=1e-12
        )


class TestWeyl:
    def test_identity_at_zero(self):
        basis = MultiIndexBasis(PARAMS, 10)
        W = weyl_matrix(PARAMS, basis, 0.0)
        np.testing.assert_allclose(W.entries, np.eye(basis.dimension), atol=1e-14)

    def test_adjoint_inverse(self):
        basis = MultiIndexBasis(PARAMS, 20)
        z = 0.6 - 0.8j
        W = weyl_matrix(PARAMS, basis, z).entries
        Wm = weyl_matrix(PARAMS, basis, -z).entries
        np.testing.assert_allclose(Wm, W.conj().T, atol=1e-13)

    def test_composition_phase(self):
        basis = MultiIndexBasis(PARAMS, 40)
        quarter = basis.dimension // 4
        z, w = 0.5 + 0.3j, -0.4 + 0.6j
        Wz = weyl_matrix(PARAMS, basis, z).entries
        Ww = weyl_matrix(PARAMS, basis, w).entries
        Wzw = weyl_matrix(PARAMS, basis, z + w).entries
        phase = np.exp(-1j * (z * np.conj(w)).imag)
        np.testing.assert_allclose(
            (Wz @ Ww)[:quarter, :quarter], (phase * Wzw)[:quarter, :quarter], atol=1e-12
        )

    def test_isometry_low_block(self):
        basis = MultiIndexBasis(PARAMS, 40)
        quarter = basis.dimension // 4
        W = weyl_matrix(PARAMS, basis, 1.0 + 0.5j).entries
        np.testing.assert_allclose(np.linalg.norm(W[:, :quarter], axis=0), 1.0, atol=1e-12)

    def test_vacuum_goes_to_coherent_state(self):
        # W_z e_0 is the normalized reproducing kernel at z: coefficients
        # e^{-|z|^2/2} conj(z)^k / sqrt(k!)
        basis = MultiIndexBasis(PARAMS, 30)
        z = 0.8 + 0.2j
        col = weyl_matrix(PARAMS, basis, z).entries[:, 0]
        ks = np.arange(basis.dimension)
        expected = np.exp(-abs(z) ** 2 / 2) * np.conj(z) ** ks / np.sqrt(
            np.array([math.factorial(int(k)) for k in ks], dtype=float)
        )
        np.testing.assert_allclose(col, expected, atol=1e-12)

    def test_multivariate_tensor_structure(self):
        p2 = FockParams(1.0, 2)
        basis2 = MultiIndexBasis(p2, 6)
        z = np.array([0.5 + 0.1j, 0.0])
        W2 = weyl_matrix(p2, basis2, z)
        basis1 = MultiIndexBasis(PARAMS, 6)
        W1 = weyl_matrix(PARAMS, basis1, 0.5 + 0.1j)
        # entries factorize over the coordinates; the second factor is Id
        i = basis2.index_of((2, 1))
        j = basis2.index_of((3, 1))
        np.testing.assert_allclose(
            W2.entries[i, j], W1.entries[2, 3], atol=1e-13
        )
        k = basis2.index_of((2, 0))
        assert abs(W2.entries[i, k]) < 1e-14


class TestOperatorMatrix:
    def test_shape_validation(self):
        basis = MultiIndexBasis(PARAMS, 4)
        with pytest.raises(ValueError):
            OperatorMatrix(basis, np.zeros((2, 2)))

    def test_apply_and_matmul(self):
        basis = MultiIndexBasis(PARAMS, 3)
        A = OperatorMatrix(basis, np.diag([1.0, 2.0, 3.0, 4.0]))
        v = unit_vector(basis, 2)
        np.testing.assert_allclose((A @ A).apply(v).coeffs[2], 9.0)

    def test_entries_immutable(self):
        basis = MultiIndexBasis(PARAMS, 2)
        A = OperatorMatrix(basis, np.eye(3))
        with pytest.raises(ValueError):
            A.entries[0, 0] = 5.0
