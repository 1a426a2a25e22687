import math

import numpy as np
import pytest
from scipy.optimize import brentq

from pairwave.errors import DataError, InfeasibleTrapError, RegionError
from pairwave.homogeneous import (InitialData, g0_hat, khat_exact,
                                  lambda_oracle, omega, scaled_point,
                                  steady_g0_r)
from pairwave.quadrature import adaptive_quad
from pairwave.trap import (TrapModel, constant_trap, exterior_kernel,
                           khat_slow, lambda_slow, local_scaling,
                           quadratic_trap, solve_tf, steady_g0_slow)

EPS, VOLUME = 0.2, 30000.0


@pytest.fixture(scope="module")
def tf_quadratic(gas_unit):
    return solve_tf(quadratic_trap(EPS, VOLUME, gas_unit), tol=1e-12)


@pytest.fixture(scope="module")
def tf_const(gas_unit):
    # homogeneous limit with Ve = -g/4 (the translationally invariant
    # potential value), E = 0
    return solve_tf(constant_trap(-0.25 * gas_unit.g, 100.0, gas_unit))


class TestSolveTF:
    def test_constant_trap_homogeneous_limit(self, gas_unit, tf_const):
        assert abs(tf_const.phi0(0.37) - 1.0) < 1e-12
        assert abs(tf_const.zeta - 1.0) < 1e-12
        assert abs(tf_const.zeta_e + 0.25 * gas_unit.g) < 1e-12
        assert abs(tf_const.energy) < 1e-12  # E = g/4 zeta + zeta_e = 0

    def test_quadratic_closed_forms(self, gas_unit, tf_quadratic):
        # hand-integrated Thomas-Fermi moments for Ve = (eps r)^2
        s_exact = (15.0 * gas_unit.a * gas_unit.rho0 * VOLUME
                   * EPS ** 3) ** 0.4
        xr = math.sqrt(s_exact) / EPS
        half_g = 0.5 * gas_unit.g
        zeta_exact = (32 * math.pi / 105) * s_exact ** 2 * xr ** 3 \
            / (half_g ** 2 * VOLUME)
        zetae_exact = s_exact ** 2 * xr ** 3 \
            / (35 * gas_unit.a * gas_unit.rho0 * VOLUME)
        assert abs(tf_quadratic.threshold - s_exact) < 1e-6 * s_exact
        assert abs(tf_quadratic.zeta - zeta_exact) < 1e-6 * zeta_exact
        assert abs(tf_quadratic.zeta_e - zetae_exact) < 1e-6 * zetae_exact

    def test_three_invariants(self, gas_unit, tf_quadratic):
        tf = tf_quadratic
        # (1) normalization
        assert tf.norm_residual < 1e-8
        # (2) energy relation E = (g/4) zeta + zeta_e
        assert abs(tf.energy - (0.25 * gas_unit.g * tf.zeta + tf.zeta_e)) \
            < 1e-8 * max(1.0, abs(tf.energy))
        # (3) vanishing at the region boundary, zero outside
        xr = math.sqrt(tf.threshold) / EPS
        assert tf.phi0(xr * (1 - 1e-10)) < 1e-4
        assert tf.phi0(xr * 1.000001) == 0.0

    def test_algebraic_equation_residual_interior(self, gas_unit,
                                                  tf_quadratic):
        # [Ve + (g/2) phi0^2 - threshold] phi0 = 0 at interior points
        rng = np.linspace(0.0, 0.95 * math.sqrt(tf_quadratic.threshold) / EPS,
                          100)
        half_g = 0.5 * gas_unit.g
        for r in rng:
            phi = tf_quadratic.phi0(r)
            resid = ((EPS * r) ** 2 + half_g * phi * phi
                     - tf_quadratic.threshold) * phi
            assert abs(resid) < 1e-10 * max(1.0, tf_quadratic.threshold)

    def test_infeasible_trap(self, gas_unit):
        with pytest.raises(InfeasibleTrapError):
            solve_tf(quadratic_trap(0.05, 4000.0, gas_unit))

    def test_cartesian_kind_consistency(self, gas_unit):
        # the same quadratic trap integrated on a tensor grid; coarse
        # tolerance set by the documented grid error estimate
        radial = solve_tf(quadratic_trap(0.25, 20000.0, gas_unit))
        box = TrapModel(ve=lambda x, y, z: 0.0625 * (x * x + y * y + z * z),
                        epsilon=0.25, omega_volume=20000.0, params=gas_unit,
                        kind="cartesian")
        cart = solve_tf(box, tol=1e-6, grid_n=64)
        assert abs(cart.threshold - radial.threshold) < 5e-3 \
            * radial.threshold
        assert abs(cart.zeta - radial.zeta) < 1e-2 * radial.zeta


class TestLocalScaling:
    def test_unit_profile_reduces_to_homogeneous(self, gas_unit, tf_const):
        pt = local_scaling(0.3, 2.0, 8.0, tf_const)
        ref = scaled_point(2.0, 8.0, gas_unit)
        assert abs(pt.r_tilde - ref.r_tilde) < 1e-12
        assert abs(pt.tau - ref.tau) < 1e-12

    def test_half_profile_worked_example(self, gas_unit, tf_quadratic):
        # phi0 = 0.5, g = 1, r = 2, t = 8 -> (r~, tau) = (1, 2)
        xr = math.sqrt(tf_quadratic.threshold) / EPS
        r_half = brentq(lambda rr: tf_quadratic.phi0(rr) - 0.5, 0.0, xr)
        pt = local_scaling(r_half, 2.0, 8.0, tf_quadratic, margin=0.0)
        assert abs(pt.r_tilde - 1.0) < 1e-10
        assert abs(pt.tau - 2.0) < 1e-10

    def test_linear_in_time(self, tf_quadratic):
        a = local_scaling(1.0, 1.0, 5.0, tf_quadratic)
        b = local_scaling(1.0, 1.0, 10.0, tf_quadratic)
        assert abs(b.tau - 2 * a.tau) < 1e-12
        assert a.r_tilde == b.r_tilde

    def test_margin_refusal(self, tf_quadratic):
        xr = math.sqrt(tf_quadratic.threshold) / EPS
        with pytest.raises(RegionError):
            local_scaling(0.999 * xr, 1.0, 1.0, tf_quadratic)
        with pytest.raises(RegionError):
            local_scaling(2 * xr, 1.0, 1.0, tf_quadratic)


class TestKhatSlow:
    def test_unit_profile_equals_homogeneous(self, gas_unit, tf_const):
        init = InitialData.zero()
        for (k, t) in ((0.4, 1.0), (2.0, 6.0)):
            assert khat_slow(0.1, k, t, init, tf_const) \
                == khat_exact(k, t, init, gas_unit)

    def test_initial_condition(self, tf_quadratic):
        init = InitialData(f0=lambda r: 0.0, f0hat=lambda k: 0.2)
        got = khat_slow(1.0, 0.7, 0.0, init, tf_quadratic)
        assert abs(got - 0.2) < 1e-13

    def test_steady_limit_is_local_g0hat(self, gas_unit, tf_quadratic):
        # with the local coupling, a slightly damped wavenumber relaxes to
        # the local steady amplitude
        phisq = tf_quadratic.phi0(2.0) ** 2
        local = gas_unit.rescaled(phisq)
        k = 1.0 - 0.01j
        got = khat_slow(2.0, k, 300.0, InitialData.zero(), tf_quadratic)
        assert abs(got - g0_hat(k, local)) < 1e-3

    def test_substitution_principle(self, gas_unit, tf_quadratic):
        # homogeneous invariants hold pointwise with rho0 -> rho0 phi0^2
        for R in (0.0, 4.0, 8.0):
            local = gas_unit.rescaled(tf_quadratic.phi0(R) ** 2)
            for k in (0.3, 1.0, 3.0):
                v = g0_hat(k, local)
                assert -1.0 <= v < 0.0
                lhs = (v - 1.0 / v) * local.g / 4.0
                assert abs(lhs - omega(k, local)) < 1e-12 * (1 + k ** 2)


class TestExteriorKernel:
    def test_zero_data_vanishes(self, tf_quadratic):
        init = InitialData.zero()
        assert exterior_kernel(100.0, 1.0, 5.0, init, tf_quadratic) == 0.0

    def test_gaussian_closed_form(self):
        sigma = 1.3
        init = InitialData.gaussian(1.0, sigma)
        for (r, t) in ((0.5, 2.0), (3.0, 10.0), (10.0, 169.0)):
            got = exterior_kernel(None, r, t, init)
            s2 = sigma ** 2 + 4.0 * t
            ref = (sigma ** 2 / s2) ** 1.5 * math.exp(-r * r / (2 * s2))
            assert abs(got - ref) < 1e-8 * ref

    def test_similarity_form(self):
        sigma = 0.9
        init = InitialData.gaussian(1.0, sigma)
        t = 100.0 * sigma ** 2
        mass = (2 * math.pi * sigma ** 2) ** 1.5
        for r in (math.sqrt(t), 2 * math.sqrt(t), 3 * math.sqrt(t)):
            got = exterior_kernel(None, r, t, init)
            simil = (8 * math.pi * t) ** -1.5 * math.exp(-r * r / (8 * t)) \
                * mass
            assert abs(got - simil) < 0.02 * simil

    def test_mass_conservation(self):
        sigma = 1.1
        init = InitialData.gaussian(1.0, sigma)
        mass = (2 * math.pi * sigma ** 2) ** 1.5
        for t in (2.0, 8.0):
            def shell(r):
                r = np.atleast_1d(np.asarray(r, dtype=float))
                vals = [exterior_kernel(None, float(ri), t, init)
                        for ri in r]
                return 4 * math.pi * r ** 2 * np.array(vals) + 0.0j

            total, _ = adaptive_quad(shell, 1e-6, 60.0, rtol=1e-8)
            assert abs(total.real - mass) < 1e-6 * mass

    def test_sup_decay_in_time(self):
        init = InitialData.gaussian(1.0, 1.0)
        sups = []
        for t in (5.0, 10.0, 20.0, 40.0):
            rs = np.linspace(0.01, 25.0, 120)
            sups.append(max(exterior_kernel(None, float(r), t, init)
                            for r in rs))
        assert all(b < a for a, b in zip(sups, sups[1:]))

    def test_region_check(self, tf_quadratic):
        init = InitialData.gaussian(1.0, 1.0)
        with pytest.raises(RegionError):
            exterior_kernel(0.0, 1.0, 1.0, init, tf_quadratic)

    def test_non_decaying_data_rejected(self):
        bad = InitialData(f0=lambda r: 1.0, f0hat=lambda k: 0.0)
        with pytest.raises(DataError):
            exterior_kernel(None, 1.0, 1.0, bad)


class TestLambdaSlow:
    def test_unit_profile_equals_homogeneous(self, gas_unit, tf_const):
        got = lambda_slow(0.2, 1.0, 100.0, tf_const, method="oracle",
                          tol=1e-8)
        ref = lambda_oracle(scaled_point(1.0, 100.0, gas_unit), tol=1e-8)
        assert got == ref

    def test_equal_profiles_give_identical_values(self, tf_quadratic):
        a = lambda_slow(3.0, 1.5, 40.0, tf_quadratic)
        b = lambda_slow(-3.0, 1.5, 40.0, tf_quadratic)
        assert a == b

    def test_small_r_law_transported(self, tf_quadratic):
        # pick (r, t) that scale to (r~, tau) = (1, 100) at R = 2
        phisq = tf_quadratic.phi0(2.0) ** 2
        g_local = tf_quadratic.model.params.g * phisq
        r = 1.0 / math.sqrt(g_local)
        t = 100.0 / g_local
        lam = lambda_slow(2.0, r, t, tf_quadratic)
        target = math.pi ** 2 / 120 / 100.0 ** 4
        assert abs(lam - target) < 0.02 * target

    def test_steady_slow_consistency(self, gas_unit, tf_quadratic):
        local = gas_unit.rescaled(tf_quadratic.phi0(1.0) ** 2)
        assert steady_g0_slow(1.0, 0.8, tf_quadratic) \
            == steady_g0_r(0.8, local)
