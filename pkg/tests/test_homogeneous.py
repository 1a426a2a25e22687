import cmath
import math

import numpy as np
import pytest

from conftest import defining_g0_hat
from pairwave.errors import DomainError, SingularDataError
from pairwave.homogeneous import (GasParams, InitialData, ScaledPoint,
                                  g0_hat, g0_quadrature, kernel_r, khat_exact,
                                  lambda_oracle, omega, p0_hat,
                                  riccati_numeric, scaled_point, spectral_state,
                                  steady_g0_r)

K_GRID = [0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 50.0]


class TestGasParams:
    def test_coupling(self):
        p = GasParams(a=0.01, rho0=2.0)
        assert math.isclose(p.g, 16 * math.pi * 0.02)

    def test_invalid(self):
        with pytest.raises(DomainError):
            GasParams(a=-1.0, rho0=1.0)
        with pytest.raises(DomainError):
            GasParams(a=0.1, rho0=0.0)


class TestG0Hat:
    def test_at_zero(self, gas_unit):
        assert g0_hat(0.0, gas_unit) == -1.0

    def test_k1_value(self, gas_unit):
        # -2(1.5 - sqrt(2)) at g = 1
        expected = -2.0 * (1.5 - math.sqrt(2.0))
        assert abs(g0_hat(1.0, gas_unit) - expected) < 1e-15

    def test_large_k_quarter_inverse_square(self, gas_unit):
        # large-k expansion oracle: -1/(4k^2) (1 - 1/(2k^2) + ...)
        got = g0_hat(10.0, gas_unit)
        assert abs(got * (-400.0) - 1.0) < 0.01
        assert abs(got + (1.0 / 400.0) * (1 - 1.0 / 200.0)) < 2e-7

    @pytest.mark.parametrize("k", K_GRID)
    def test_bounds_and_defining_form(self, gas_unit, k):
        val = g0_hat(k, gas_unit)
        assert -1.0 <= val < 0.0
        assert abs(val - defining_g0_hat(k, gas_unit.g)) < 1e-13

    def test_monotone_increasing(self, gas_unit):
        vals = [g0_hat(k, gas_unit) for k in K_GRID]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_negative_k_rejected(self, gas_unit):
        with pytest.raises(DomainError):
            g0_hat(-0.1, gas_unit)


class TestOmega:
    def test_zero(self, gas_unit):
        assert omega(0.0, gas_unit) == 0.0

    def test_k1_sqrt2(self, gas_unit):
        assert abs(omega(1.0, gas_unit) - math.sqrt(2.0)) < 1e-15

    def test_strictly_increasing(self, gas_unit):
        vals = [omega(k, gas_unit) for k in K_GRID]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("k", [0.3, 1.0, 3.0])
    def test_identity_with_g0hat(self, gas_unit, k):
        g0 = g0_hat(k, gas_unit)
        lhs = (g0 - 1.0 / g0) * gas_unit.g / 4.0
        assert abs(lhs - omega(k, gas_unit)) < 1e-13 * (1 + k ** 2)

    @pytest.mark.parametrize("k", [0.3, 1.0, 3.0])
    def test_one_minus_g0sq_identity(self, gas_unit, k):
        g0 = g0_hat(k, gas_unit)
        lhs = 1.0 - g0 * g0
        rhs = -g0 * omega(k, gas_unit) / (gas_unit.g / 4.0)
        assert abs(lhs - rhs) < 1e-13


class TestP0Hat:
    def test_zero_data_gives_g0(self, gas_unit):
        init = InitialData.zero()
        for k in (0.2, 1.0, 4.0):
            assert p0_hat(k, init, gas_unit) == g0_hat(k, gas_unit)

    def test_fixed_point_data_gives_zero(self, gas_unit):
        init = InitialData(f0=lambda r: 0.0,
                           f0hat=lambda k: g0_hat(k, gas_unit))
        assert p0_hat(1.0, init, gas_unit) == 0.0

    def test_worked_value(self, gas_unit):
        # direct arithmetic: (-2(1.5 - sqrt 2) - 0.3)/(1 + 0.3*2(1.5 - sqrt 2))
        init = InitialData(f0=lambda r: 0.0, f0hat=lambda k: 0.3)
        g0 = defining_g0_hat(1.0, 1.0)
        expected = (g0 - 0.3) / (1.0 - 0.3 * g0)
        assert abs(p0_hat(1.0, init, gas_unit) - expected) < 1e-14
        assert abs(expected - (-0.44849)) < 1e-5

    def test_singular_data(self, gas_unit):
        g0 = g0_hat(1.0, gas_unit)
        init = InitialData(f0=lambda r: 0.0, f0hat=lambda k: 1.0 / g0)
        with pytest.raises(SingularDataError):
            p0_hat(1.0, init, gas_unit)

    def test_spectral_state_bundle(self, gas_unit):
        st = spectral_state(1.0, InitialData.zero(), gas_unit)
        assert st.g0hat == g0_hat(1.0, gas_unit)
        assert st.omega == omega(1.0, gas_unit)
        assert st.p0 == st.g0hat


class TestKhatExact:
    def test_initial_condition(self, gas_unit):
        init = InitialData(f0=lambda r: 0.0, f0hat=lambda k: 0.3)
        for k in (0.2, 1.0, 4.0):
            assert abs(khat_exact(k, 0.0, init, gas_unit) - 0.3) < 1e-14

    def test_steady_state_fixed_point(self, gas_unit):
        init = InitialData(f0=lambda r: 0.0,
                           f0hat=lambda k: g0_hat(k, gas_unit))
        for t in (0.0, 1.0, 7.5):
            got = khat_exact(1.0, t, init, gas_unit)
            assert abs(got - g0_hat(1.0, gas_unit)) < 1e-14

    def test_shifted_k_long_time_limit(self, gas_unit):
        # with a small negative imaginary shift e^{-2 i w t} decays and the
        # solution relaxes to the steady state
        k = 1.0 - 0.01j
        init = InitialData.zero()
        g0 = g0_hat(k, gas_unit)
        diff = abs(khat_exact(k, 400.0, init, gas_unit) - g0)
        assert diff < 1e-3
        assert diff < abs(khat_exact(k, 100.0, init, gas_unit) - g0)

    def test_bounded_in_time(self, gas_unit):
        init = InitialData.zero()
        vals = [abs(khat_exact(0.8, t, init, gas_unit))
                for t in np.linspace(0, 50, 301)]
        assert max(vals) < 1.0  # |khat| <= |g0| ... bounded, no resonance


class TestRiccati:
    def test_fixed_point_trajectory(self, gas_unit):
        g0 = g0_hat(1.0, gas_unit)
        got = riccati_numeric(1.0, 5.0, g0, gas_unit, tol=1e-11)
        assert abs(got - g0) < 1e-9

    def test_matches_closed_form(self, gas_unit):
        init = InitialData.zero()
        got = riccati_numeric(1.0, 5.0, 0.0, gas_unit, tol=1e-11)
        ref = khat_exact(1.0, 5.0, init, gas_unit)
        assert abs(got - ref) < 1e-8

    def test_alpha_parameterized_closed_form(self, gas_unit):
        # nondimensionalized closed form: z(t) = A - B + 2A C E/(1 - C E)
        # with A = alpha sqrt(2 + alpha^2), B = 1 + alpha^2,
        # C = (z0 + B - A)/(z0 + B + A), E = e^{-2 i A t'}, t' = (g/2) t
        k, t, z0 = 1.3, 4.0, 0.25
        half_g = 0.5 * gas_unit.g
        alpha = k / math.sqrt(half_g)
        a_const = alpha * math.sqrt(2.0 + alpha * alpha)
        b_const = 1.0 + alpha * alpha
        c_const = (z0 + b_const - a_const) / (z0 + b_const + a_const)
        e_ph = cmath.exp(-2j * a_const * half_g * t)
        closed = a_const - b_const + 2 * a_const * c_const * e_ph \
            / (1.0 - c_const * e_ph)
        got = riccati_numeric(k, t, z0, gas_unit, tol=1e-11)
        assert abs(got - closed) < 1e-8

    @pytest.mark.parametrize("k", [0.1, 0.5, 1.0, 2.0, 5.0])
    @pytest.mark.parametrize("f0hat", [0.0, 0.3])
    def test_oracle_equivalence_grid(self, gas_unit, k, f0hat):
        init = InitialData(f0=lambda r: 0.0, f0hat=lambda kk: f0hat)
        for t in (0.5, 3.0, 10.0):
            ref = khat_exact(k, t, init, gas_unit)
            got = riccati_numeric(k, t, init.f0hat(k), gas_unit, tol=1e-10)
            assert abs(got - ref) < 1e-7


class TestSteadyState:
    def test_chi_scaling(self, gas_unit):
        # g = 1, r = 1 means chi = 1; the value only depends on chi
        p4 = GasParams.from_coupling(4.0)
        assert math.isclose(steady_g0_r(1.0, gas_unit) / 1.0 ** 1.5,
                            steady_g0_r(0.5, p4) / 4.0 ** 1.5 * 1.0,
                            rel_tol=1e-12)

    @pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
    def test_quadrature_consistency(self, gas_unit, r):
        lom = steady_g0_r(r, gas_unit)
        quad = g0_quadrature(r, gas_unit)
        assert abs(lom - quad) <= 1e-3 * abs(quad)

    def test_negative_at_small_r(self, gas_unit):
        # short-distance behavior ~ -g/(16 pi r)
        assert steady_g0_r(0.05, gas_unit) < 0

    def test_large_r_decay_monotone(self, gas_unit):
        rs = np.linspace(5.0, 20.0, 16)
        vals = [abs(steady_g0_r(r, gas_unit)) for r in rs]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_r_zero_rejected(self, gas_unit):
        with pytest.raises(DomainError):
            steady_g0_r(0.0, gas_unit)


class TestKernelR:
    def test_definitional_consistency(self, gas_unit):
        for (r, t) in ((0.7, 60.0), (1.0, 100.0), (2.0, 150.0)):
            pt = scaled_point(r, t, gas_unit)
            lam = lambda_oracle(pt, tol=1e-7)
            total = kernel_r(r, t, gas_unit, tol=1e-7)
            assert abs(total - steady_g0_r(r, gas_unit)
                       - gas_unit.g ** 1.5 * lam) < 1e-15

    def test_long_time_approaches_steady(self, gas_unit):
        g0 = steady_g0_r(1.0, gas_unit)
        d1 = abs(kernel_r(1.0, 50.0, gas_unit, tol=1e-6) - g0)
        d2 = abs(kernel_r(1.0, 200.0, gas_unit, tol=1e-8) - g0)
        assert d2 < d1 * 0.01  # tau^-4 decay

    def test_correction_scale_at_t100(self, gas_unit):
        # correction ~ (pi^2/120) 1e-8 on top of g0(1)
        corr = kernel_r(1.0, 100.0, gas_unit, tol=1e-8) \
            - steady_g0_r(1.0, gas_unit)
        assert abs(corr - math.pi ** 2 / 120 * 1e-8) < 0.02 * math.pi ** 2 \
            / 120 * 1e-8


class TestScaledPoint:
    def test_builder(self, gas_unit):
        pt = scaled_point(2.0, 8.0, gas_unit)
        assert math.isclose(pt.r_tilde, 2.0)
        assert math.isclose(pt.tau, 8.0)

    def test_validation(self):
        with pytest.raises(DomainError):
            ScaledPoint(-1.0, 1.0)
        with pytest.raises(DomainError):
            ScaledPoint(1.0, 0.0)
