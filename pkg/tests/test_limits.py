"""Tests for directional limits, essential-spectrum samples, Fredholm
witnesses, compactness probes, and boundary extension."""

import math

import numpy as np
import pytest

from focklab import engine, limits
from focklab.fock import FockParams, MultiIndexBasis, OperatorMatrix, TruncatedVector
from focklab.symbols import Angular, Constant, Gaussian, Sum, sin_sqrt_symbol, slow_log_symbol, unit_ripple_symbol

PARAMS = FockParams(1.0)


class TestDirectionApproximant:
    def test_requires_increasing_radii(self):
        with pytest.raises(ValueError):
            limits.DirectionApproximant(0.0, (1.0, 1.0, 2.0))
        with pytest.raises(ValueError):
            limits.DirectionApproximant(0.0, (1.0, 2.0))

    def test_direction_unit_vector(self):
        d = limits.DirectionApproximant(math.pi / 2)
        np.testing.assert_allclose(d.direction, 1j, atol=1e-15)


class TestLimitSymbol:
    def test_constant(self):
        v = limits.limit_symbol(Constant(1.5 - 0.5j), limits.DirectionApproximant(1.0))
        assert v.converged
        np.testing.assert_allclose(v.limit, 1.5 - 0.5j)

    def test_gaussian_vanishes(self):
        v = limits.limit_symbol(Gaussian(1.0), limits.DirectionApproximant(0.3))
        assert v.converged
        assert abs(v.limit) < 1e-15

    def test_angular_antipode(self):
        th = 0.8
        v = limits.limit_symbol(Angular(((1, 1.0),), 1.0), limits.DirectionApproximant(th))
        assert v.converged
        np.testing.assert_allclose(v.limit, np.exp(1j * (th + math.pi)), atol=1e-9)

    def test_ripple_does_not_converge(self):
        v = limits.limit_symbol(unit_ripple_symbol(), limits.DirectionApproximant(0.0))
        assert not v.converged


class TestLimitOperator:
    def test_angular_scalar_limit(self):
        d = limits.DirectionApproximant(0.4)
        lo = limits.limit_operator(Angular(((1, 1.0),), 1.0), d, PARAMS, 10)
        assert lo.converged
        target = np.exp(1j * (0.4 + math.pi)) * np.eye(11)
        np.testing.assert_allclose(lo.limit.entries, target, atol=1e-8)

    def test_c0_perturbation_drops_out(self):
        d = limits.DirectionApproximant(1.2)
        mix = Sum((Constant(0.3), Gaussian(1.0)))
        lo = limits.limit_operator(mix, d, PARAMS, 8)
        np.testing.assert_allclose(lo.limit.entries, 0.3 * np.eye(9), atol=1e-9)


class TestEssentialSpectrum:
    DIRECTIONS = np.linspace(0, 2 * math.pi, 12, endpoint=False)

    def test_angular_sweeps_circle(self):
        es = limits.essential_spectrum_vo(Angular(((1, 1.0),), 1.0), self.DIRECTIONS)
        assert len(es.values) == 12
        for v in es.values:
            np.testing.assert_allclose(abs(v), 1.0, atol=1e-9)

    def test_constant_single_point(self):
        es = limits.essential_spectrum_vo(Constant(2.0), self.DIRECTIONS[:4])
        for v in es.values:
            np.testing.assert_allclose(v, 2.0)

    def test_radial_vo_reports_note(self):
        es = limits.essential_spectrum_vo(sin_sqrt_symbol(), self.DIRECTIONS[:4])
        assert es.values == ()
        assert "non-directional" in es.note

    def test_rejects_non_vo(self):
        with pytest.raises(ValueError):
            limits.essential_spectrum_vo(unit_ripple_symbol(), self.DIRECTIONS[:2])


class TestFredholmWitness:
    ANG = Angular(((1, 1.0),), 1.0)

    def test_passes_outside_spectrum(self):
        w = limits.fredholm_witness(self.ANG, 3.0, PARAMS, 32)
        assert w.passed
        assert all(b < a for a, b in zip(w.tails, w.tails[1:]))

    def test_fails_on_spectrum(self):
        w = limits.fredholm_witness(self.ANG, 1.0, PARAMS, 32)
        assert not w.passed
        assert "patch not compact" in w.reason


class TestCompactness:
    def test_gaussian_is_compact_consistent(self):
        mats = [engine.toeplitz_matrix(Gaussian(1.0), PARAMS, N) for N in (48, 64)]
        prof = limits.compactness_probe(mats)
        assert prof.compact_consistent
        # sigma_k = (1+t)^{-(k+1)}
        np.testing.assert_allclose(prof.singular_values[40], 0.5**41, rtol=1e-6)
        assert prof.tails[-1] < 1e-10

    def test_identity_is_not(self):
        mats = [
            OperatorMatrix(MultiIndexBasis(PARAMS, N), np.eye(N + 1)) for N in (48, 64)
        ]
        assert not limits.compactness_probe(mats).compact_consistent

    def test_rank_one_profile(self):
        basis = MultiIndexBasis(PARAMS, 64)
        e0 = np.zeros(basis.dimension)
        e0[0] = 1.0
        R = engine.rank_one(basis, TruncatedVector(basis, e0), TruncatedVector(basis, e0))
        prof = limits.compactness_probe([R])
        assert prof.compact_consistent
        sv = np.array(prof.singular_values)
        assert int(np.sum(sv > 1e-12)) == 1
        # tail at R = 8 decays like e^{-R^2/t} up to a bounded grid factor
        assert math.exp(-64.0) < prof.tails[-1] < 10.0 * math.exp(-64.0)


class TestCommutatorProbe:
    def test_vo_pair_compact_trend(self):
        cp = limits.commutator_probe(sin_sqrt_symbol(), Angular(((1, 1.0),), 1.0), PARAMS)
        assert cp.compact_consistent

    def test_ripple_negative_control(self):
        cp = limits.commutator_probe(unit_ripple_symbol(), Angular(((1, 1.0),), 1.0), PARAMS)
        assert not cp.compact_consistent


class TestSlowOscillationEquivalence:
    def test_three_indicators_agree(self):
        for sym, vanishes in ((Gaussian(1.0), True), (Constant(1.0), False), (slow_log_symbol(), True)):
            v = limits.slow_oscillation_equivalence(sym, 1.0)
            assert v.agree
            assert v.symbol_vanishes == vanishes


class TestBoundaryExtension:
    def test_limits_reproduce_antipode(self):
        bs = limits.extend_boundary_symbol(lambda th: np.exp(1j * th), 1.0)
        v = limits.limit_symbol(bs, limits.DirectionApproximant(0.9))
        assert v.converged
        np.testing.assert_allclose(v.limit, np.exp(1j * (0.9 + math.pi)), atol=1e-9)

    def test_vanishes_inside_cutoff(self):
        bs = limits.extend_boundary_symbol(lambda th: np.exp(1j * th), 2.0)
        assert abs(bs.eval(1.0 + 0j)) < 1e-14

    def test_rejects_discontinuous_data(self):
        with pytest.raises(ValueError):
            limits.extend_boundary_symbol(lambda th: 1.0 if th < 3.0 else -1.0, 1.0)
