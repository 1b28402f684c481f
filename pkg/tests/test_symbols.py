"""Tests for symbol families, group actions, and heat transforms."""

import math

import numpy as np
import pytest

from focklab.symbols import (
    Angular,
    CallableSymbol,
    Constant,
    Gaussian,
    Oscillatory,
    PolyGaussian,
    Product,
    RadialProfile,
    SampledRadial,
    Sum,
    c0_tail,
    dilate,
    heat_symbol,
    heat_transform,
    heat_transform_info,
    reflect,
    sin_sqrt_symbol,
    slow_log_symbol,
    symbol_from_dict,
    translate,
    unit_ripple_symbol,
    vo_modulus,
)

RNG = np.random.default_rng(11)
ZS = 2.0 * np.sqrt(RNG.uniform(0, 1, 12)) * np.exp(1j * RNG.uniform(0, 2 * np.pi, 12))


class TestFamilies:
    def test_constant(self):
        c = Constant(2.0 - 1.0j)
        np.testing.assert_allclose(c.eval(ZS), (2.0 - 1.0j) * np.ones(12))
        assert c.sup_bound() == abs(2.0 - 1.0j)

    def test_gaussian_center_amplitude(self):
        g = Gaussian(0.8, 1.0 + 0.5j, 2.0)
        z = 1.3 - 0.2j
        expected = 2.0 * math.exp(-abs(z - (1.0 + 0.5j)) ** 2 / 0.8)
        np.testing.assert_allclose(g.eval(z), expected, rtol=1e-14)

    def test_gaussian_rejects_growing_width(self):
        with pytest.raises(ValueError):
            Gaussian(-0.5)

    def test_polygaussian_reduces_to_gaussian(self):
        pg = PolyGaussian(((0, 0, 1.0),), 1.2)
        g = Gaussian(1.2)
        np.testing.assert_allclose(pg.eval(ZS), g.eval(ZS), rtol=1e-14)

    def test_angular_phase_and_cutoff(self):
        a = Angular(((1, 1.0),), 1.0)
        far = 5.0 * np.exp(1j * 0.7)
        np.testing.assert_allclose(a.eval(far), np.exp(1j * 0.7), rtol=1e-14)
        # inside r0 the phase is damped by the smooth ramp; at the origin it vanishes
        assert abs(a.eval(0.3 * np.exp(1j * 0.7))) < 1.0
        assert abs(a.eval(0.0 + 0j)) == 0.0

    def test_oscillatory_unimodular(self):
        o = Oscillatory(2.0)
        np.testing.assert_allclose(np.abs(o.eval(ZS)), 1.0, rtol=1e-14)

    def test_radial_profiles_bounded(self):
        for sym in (sin_sqrt_symbol(), slow_log_symbol(), unit_ripple_symbol()):
            assert np.max(np.abs(sym.eval(ZS))) <= sym.sup_bound() + 1e-12
            assert sym.is_radial

    def test_sampled_radial_interpolates(self):
        r = np.linspace(0, 5, 80)
        vals = np.cos(r)
        s = SampledRadial(tuple(r), tuple(vals.astype(complex)))
        np.testing.assert_allclose(s.eval(2.0 + 0j), math.cos(2.0), atol=1e-4)

    def test_symbol_from_dict_round_trip(self):
        spec = {
            "family": "gaussian",
            "width": 1.5,
            "center_re": 0.5,
            "center_im": -0.5,
            "amplitude": 2.0,
        }
        sym = symbol_from_dict(spec)
        assert isinstance(sym, Gaussian)
        np.testing.assert_allclose(sym.eval(0.5 - 0.5j), 2.0, rtol=1e-14)

    def test_symbol_from_dict_unknown_family(self):
        with pytest.raises((KeyError, ValueError)):
            symbol_from_dict({"family": "nope"})


class TestGroupActions:
    def test_translate_exact(self):
        f = Gaussian(0.9, 0.2 + 0.1j)
        z0 = 1.0 - 0.4j
        np.testing.assert_allclose(translate(f, z0).eval(ZS), f.eval(ZS - z0), rtol=1e-13)

    def test_translate_zero_identity(self):
        f = Gaussian(1.0)
        np.testing.assert_allclose(translate(f, 0.0).eval(ZS), f.eval(ZS))

    def test_reflect(self):
        f = Gaussian(1.0, 0.7)
        np.testing.assert_allclose(reflect(f).eval(ZS), f.eval(-ZS), rtol=1e-13)

    def test_dilate_gaussian_width(self):
        # f(lam z) for f = e^{-|z|^2/a} is e^{-|z|^2/(a/lam^2)}
        f = Gaussian(2.0)
        lam = 1.5
        g = Gaussian(2.0 / lam**2)
        np.testing.assert_allclose(dilate(f, lam).eval(ZS), g.eval(ZS), rtol=1e-13)

    def test_dilate_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            dilate(Gaussian(1.0), 0.0)

    def test_action_composition(self):
        f = Angular(((2, 1.0),), 1.0)
        z0, z1 = 0.5, -0.3j
        lhs = translate(translate(f, z0), z1)
        rhs = translate(f, z0 + z1)
        np.testing.assert_allclose(lhs.eval(ZS), rhs.eval(ZS), rtol=1e-13)


class TestHeatTransform:
    def test_constant_fixed_point(self):
        h = heat_symbol(Constant(3.0), 0.7)
        np.testing.assert_allclose(h.eval(ZS), 3.0 * np.ones(12), rtol=1e-14)

    def test_gaussian_closed_form(self):
        # g_s * e^{-|z|^2/a} = (a/(a+s)) e^{-|z|^2/(a+s)}
        a, s = 1.3, 0.6
        h = heat_symbol(Gaussian(a), s)
        expected = (a / (a + s)) * np.exp(-np.abs(ZS) ** 2 / (a + s))
        np.testing.assert_allclose(h.eval(ZS), expected, rtol=1e-13)

    def test_closed_form_matches_quadrature(self):
        f = PolyGaussian(((1, 0, 1.0), (0, 0, 0.5)), 1.1)
        wrapped = CallableSymbol(f.eval, bound=f.sup_bound())
        cf = heat_transform(f, 0.5, ZS)
        qd = heat_transform(wrapped, 0.5, ZS, tol=1e-11)
        np.testing.assert_allclose(cf, qd, atol=1e-9)

    def test_oscillatory_closed_form(self):
        # e^{ia|z|^2} transforms through a complex-width Gaussian
        f = Oscillatory(1.0)
        wrapped = CallableSymbol(f.eval, bound=1.0)
        cf = heat_transform(f, 0.4, ZS)
        qd = heat_transform(wrapped, 0.4, ZS, tol=1e-11)
        np.testing.assert_allclose(cf, qd, atol=1e-9)

    def test_angular_closed_form(self):
        f = Angular(((1, 0.5), (3, 0.2)), 1.0)
        wrapped = CallableSymbol(f.eval, bound=f.sup_bound())
        pts = np.array([0.5, 1.5 + 1.0j, 3.0j])
        cf = heat_transform(f, 0.5, pts)
        qd = heat_transform(wrapped, 0.5, pts, tol=1e-11)
        np.testing.assert_allclose(cf, qd, atol=1e-8)

    def test_semigroup(self):
        f = Gaussian(1.0, 0.3)
        h1 = heat_symbol(heat_symbol(f, 0.25), 0.5)
        h2 = heat_symbol(f, 0.75)
        np.testing.assert_allclose(h1.eval(ZS), h2.eval(ZS), rtol=1e-12)

    def test_commutes_with_translate(self):
        f = PolyGaussian(((1, 1, 1.0),), 1.0)
        z0 = 0.7 - 0.2j
        lhs = heat_symbol(translate(f, z0), 0.5).eval(ZS)
        rhs = translate(heat_symbol(f, 0.5), z0).eval(ZS)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12)

    def test_contractivity(self):
        f = Gaussian(1.0, 0.0, 2.0)
        vals = heat_transform(f, 0.8, ZS)
        assert np.max(np.abs(vals)) <= f.sup_bound() + 1e-10

    def test_quadrature_info_reports_method(self):
        info = heat_transform_info(CallableSymbol(lambda z: np.exp(-np.abs(z)), bound=1.0), 0.5, ZS[:3])
        assert info.method == "quadrature"
        info2 = heat_transform_info(Gaussian(1.0), 0.5, ZS[:3])
        assert info2.method == "closed-form"

    def test_rejects_nonpositive_time(self):
        with pytest.raises(ValueError):
            heat_transform(Gaussian(1.0), -0.1, ZS)


class TestRegularityChecks:
    def test_c0_tail_gaussian(self):
        np.testing.assert_allclose(c0_tail(Gaussian(1.0), 4.0), math.exp(-16.0), rtol=1e-10)

    def test_vo_modulus_decays_for_sin_sqrt(self):
        m_near = vo_modulus(sin_sqrt_symbol(), 10.0)
        m_far = vo_modulus(sin_sqrt_symbol(), 400.0)
        assert m_far < 0.1 * m_near

    def test_vo_modulus_persists_for_ripple(self):
        assert vo_modulus(unit_ripple_symbol(), 400.0) > 0.5

    def test_composites(self):
        s = Sum((Constant(1.0), Gaussian(1.0)))
        p = Product((Constant(2.0), Gaussian(1.0)))
        np.testing.assert_allclose(s.eval(0.0), 2.0)
        np.testing.assert_allclose(p.eval(0.0), 2.0)
        assert s.sup_bound() <= 2.0 + 1e-12
        h = heat_symbol(s, 0.5)
        np.testing.assert_allclose(
            h.eval(ZS), heat_transform(Constant(1.0), 0.5, ZS) + heat_transform(Gaussian(1.0), 0.5, ZS)
        )
