"""Translationally invariant system: exact Fourier-space evolution of the
pair kernel, its steady state, and brute-force quadrature oracles.

Units are hbar = 2m = 1 throughout; the coupling scale is g = 16 pi a rho0,
so sqrt(g) is the sound speed and 1/g the relaxation time.
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from . import _kernels
from .errors import (ContourError, DomainError, SingularDataError,
                     SingularityError, StiffnessError)
from .quadrature import adaptive_quad
from .specfun.lommel import steady_imag_diff


@dataclass(frozen=True)
class GasParams:
    """Scattering length and equilibrium density (hbar = 2m = 1)."""
    a: float
    rho0: float

    def __post_init__(self):
        if not (self.a > 0 and self.rho0 > 0):
            raise DomainError(
                f"need a > 0 and rho0 > 0, got a={self.a}, rho0={self.rho0}")

    @property
    def g(self):
        """Coupling 16 pi a rho0 (inverse squared length)."""
        return 16.0 * math.pi * self.a * self.rho0

    @classmethod
    def from_coupling(cls, g):
        """Convenience constructor fixing rho0 = 1."""
        return cls(a=g / (16.0 * math.pi), rho0=1.0)

    def rescaled(self, density_factor):
        """Same scattering length, density multiplied by density_factor."""
        return GasParams(self.a, self.rho0 * density_factor)


@dataclass(frozen=True)
class InitialData:
    """Radial initial kernel f0(r) together with its 3D radial transform."""
    f0: Callable[[float], float]
    f0hat: Callable[[float], float]
    zero_flag: bool = False

    @classmethod
    def zero(cls):
        return cls(f0=lambda r: 0.0, f0hat=lambda k: 0.0, zero_flag=True)

    @classmethod
    def gaussian(cls, amplitude=1.0, sigma=1.0):
        """f0(r) = A exp(-r^2/(2 sigma^2)); transform A (2 pi sigma^2)^{3/2}
        exp(-k^2 sigma^2 / 2)."""
        norm = amplitude * (2.0 * math.pi * sigma ** 2) ** 1.5

        def f0(r):
            return amplitude * math.exp(-0.5 * (r / sigma) ** 2)

        def f0hat(k):
            return norm * math.exp(-0.5 * (k * sigma) ** 2)

        return cls(f0=f0, f0hat=f0hat)


@dataclass(frozen=True)
class ScaledPoint:
    """Non-dimensional separation and time, r~ = sqrt(g) r, tau = g t."""
    r_tilde: float
    tau: float

    def __post_init__(self):
        if self.r_tilde < 0:
            raise DomainError(f"r_tilde must be >= 0, got {self.r_tilde}")
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0, got {self.tau}")


def scaled_point(r, t, params):
    g = params.g
    return ScaledPoint(r_tilde=math.sqrt(g) * r, tau=g * t)


@dataclass(frozen=True)
class SpectralState:
    """Fourier-space ingredients of the exact solution at one wavenumber."""
    k: float
    g0hat: float
    omega: float
    p0: float


def g0_hat(k, params):
    """Steady-state pair amplitude in Fourier space.

    Rationalized form -(g/2)/(k^2 + g/2 + k sqrt(k^2 + g)); lies in [-1, 0)
    for k >= 0 and is stable against cancellation at large k.  Complex k is
    accepted (used by the analytic-continuation checks).
    """
    if isinstance(k, complex):
        g = params.g
        return -(0.5 * g) / (k * k + 0.5 * g + k * np.sqrt(complex(k * k + g)))
    if k < 0:
        raise DomainError(f"wavenumber must be >= 0, got {k}")
    g = params.g
    return -(0.5 * g) / (k * k + 0.5 * g + k * math.sqrt(k * k + g))


def omega(k, params):
    """Phonon dispersion k sqrt(k^2 + g)."""
    if isinstance(k, complex):
        return k * np.sqrt(complex(k * k + params.g))
    if k < 0:
        raise DomainError(f"wavenumber must be >= 0, got {k}")
    return k * math.sqrt(k * k + params.g)


def p0_hat(k, init, params):
    """Initial-data mix (g0hat - f0hat) / (1 - g0hat f0hat)."""
    g0 = g0_hat(k, params)
    f0 = init.f0hat(k)
    den = 1.0 - g0 * f0
    if abs(den) < 1e-14:
        raise SingularDataError(
            f"initial data singular at k={k}: 1 - g0hat*f0hat = {den}")
    return (g0 - f0) / den


def spectral_state(k, init, params):
    return SpectralState(k=k, g0hat=g0_hat(k, params), omega=omega(k, params),
                         p0=p0_hat(k, init, params))


def khat_exact(k, t, init, params):
    """Exact Fourier-space kernel at time t.

    khat = g0hat - (1 - g0hat^2) p0 E / (1 - g0hat p0 E),  E = e^{-2 i w t}.
    """
    if isinstance(k, complex):
        # analytic continuation off the real axis is only defined for zero
        # initial data (p0 = g0hat continues with the closed form)
        if not init.zero_flag:
            raise DomainError(
                "complex wavenumbers require zero initial data")
        g0 = g0_hat(k, params)
        w = omega(k, params)
        p0 = g0
    else:
        if t < 0:
            raise DomainError(f"time must be >= 0, got {t}")
        g0 = g0_hat(k, params)
        w = omega(k, params)
        p0 = p0_hat(k, init, params)
    ph = np.exp(-2j * w * t)
    den = 1.0 - g0 * p0 * ph
    if abs(den) < 1e-12:
        raise SingularityError(
            f"khat denominator vanished at k={k}, t={t} (|den|={abs(den):.2e})")
    return g0 - (1.0 - g0 * g0) * p0 * ph / den


def riccati_numeric(k, t_end, z0, params, tol=1e-10, t_eval=None):
    """Integrate the Fourier-space Riccati equation numerically.

    i dz/dt = (g/2) z^2 + 2 (k^2 + g/2) z + g/2, z(0) = z0.  Independent
    oracle for khat_exact; adaptive RK45 with complex state.  Returns
    z(t_end), or the array of z values along t_eval if that grid (which
    must end at t_end) is given.
    """
    if t_end < 0:
        raise DomainError(f"t_end must be >= 0, got {t_end}")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}")
    if t_end == 0 and t_eval is None:
        return complex(z0)
    half_g = 0.5 * params.g
    lin = 2.0 * (k * k + half_g)

    def rhs(t, y):
        z = y[0]
        return [-1j * (half_g * z * z + lin * z + half_g)]

    sol = solve_ivp(rhs, (0.0, t_end), [complex(z0)], method="RK45",
                    rtol=tol, atol=tol, t_eval=t_eval)
    if not sol.success:
        raise StiffnessError(f"Riccati integration failed: {sol.message}")
    if t_eval is not None:
        return sol.y[0]
    return complex(sol.y[0, -1])


def steady_g0_r(r, params):
    """Steady-state kernel g0(r) from the Lommel closed form.

    g0(r) = -pi^{-2} (g/4)^{3/2} chi^{-1} Im[S_{0,4}(i chi) - S_{0,0}(i chi)]
    with chi = sqrt(g) r; the sign convention is fixed against the
    inversion-integral oracle (g0 < 0 at small r).
    """
    if not r > 0:
        raise DomainError(f"steady kernel needs r > 0, got {r}")
    g = params.g
    chi = math.sqrt(g) * r
    pref = (0.25 * g) ** 1.5 / (math.pi ** 2 * chi)
    return pref * steady_imag_diff(chi)


def g0_quadrature(r, params, angle=math.pi / 4, rtol=1e-10):
    """Quadrature oracle for g0(r): the damped (contour-rotated) inversion

        g0(r) = (1/(2 pi^2 r)) Im int_0^inf k e^{i k r} g0hat(k) dk

    integrated along the ray arg k = angle, where e^{ikr} decays and g0hat
    is analytic (its branch points sit at +-i sqrt(g)).
    """
    if not r > 0:
        raise DomainError(f"quadrature oracle needs r > 0, got {r}")
    if not 0 < angle < math.pi / 2.1:
        raise DomainError(f"rotation angle out of range: {angle}")
    g = params.g

    def f(s):
        return _kernels.steady_inversion_integrand(s, r, g, angle)

    s_hi = 55.0 / (r * math.sin(angle)) + 4.0 * math.sqrt(g)
    total, _ = adaptive_quad(f, 0.0, s_hi, rtol=rtol)
    return total.imag / (2.0 * math.pi ** 2 * r)


def _safe_ray_angle(rt, tau, requested):
    """Largest usable rotation angle at (r~, tau).

    On the ray the integrand rises like exp(angle * s * (r~ cosh s
    - 2 tau cosh 2s)) before the time damping wins; the peak must stay
    within double-precision range of the quadrature target, so for
    r~ well beyond 2 tau the ray has to hug the real axis.
    """
    if rt <= 2.0 * tau:
        return requested
    s = np.linspace(0.05, 3.0, 60)
    bump = float(np.max(s * (rt * np.cosh(s) - 2.0 * tau * np.cosh(2 * s))))
    if bump <= 0.0:
        return requested
    angle = min(requested, 8.0 / bump)
    if angle < 2e-3:
        raise ContourError(
            f"(r~={rt}, tau={tau}) is beyond the oracle's practical reach: "
            f"the saddle forces a ray angle below 2e-3")
    return angle


def lambda_oracle_complex(pt, contour_angle=0.1, tol=1e-6):
    """Full complex value of the deviation integral (see lambda_oracle)."""
    if not 0 < contour_angle <= 0.3:
        raise DomainError(
            f"contour_angle must be in (0, 0.3], got {contour_angle}")
    if not pt.r_tilde > 0:
        raise DomainError("lambda oracle needs r_tilde > 0")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}")
    rt, tau = pt.r_tilde, pt.tau
    angle = _safe_ray_angle(rt, tau, contour_angle)
    cutoff = tol * 1e-3

    def f(s):
        return _kernels.deviation_integrand(s, rt, tau, angle)

    # march outward until the integrand magnitude stays below the cutoff
    s_hi, quiet = 0.25, 0
    while s_hi < 40.0:
        if abs(f(np.array([s_hi]))[0]) < cutoff:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        s_hi += 0.25
    else:
        raise ContourError(
            f"integrand did not decay below {cutoff:.2e} by s=40")
    total, err = adaptive_quad(f, 0.0, s_hi, rtol=1e-10, atol=0.05 * cutoff)
    return total / (2.0 * math.pi ** 2 * rt), err / (2.0 * math.pi ** 2 * rt)


def lambda_oracle(pt, contour_angle=0.1, tol=1e-6):
    """Deviation of the pair kernel from its steady state, by brute force.

    Evaluates the oscillatory integral for Lambda(r~, tau) (zero initial
    excitation) by adaptive quadrature along the ray eta = s e^{-i angle},
    legitimate because the integrand's poles lie in the first and third
    quadrants.  contour_angle is the maximum rotation; past the first
    coalescence radius (r~ > 2 tau) the ray is automatically flattened
    to keep the saddle's exponential bump inside double-precision range.
    Truncates where the integrand magnitude falls below tol*1e-3 and
    returns the real part.

    The deviation kernel is genuinely complex: its imaginary part is
    O(10/tau) relative to the real part at moderate r~ and can be O(1)
    relative near the coalescence radii r~ ~ 2 l tau.  Raises ContourError
    if |Im Lambda| > tol, so choose tol above the expected imaginary scale
    (and well below |Lambda| itself to keep the check meaningful).
    """
    val, _ = lambda_oracle_complex(pt, contour_angle=contour_angle, tol=tol)
    if abs(val.imag) > tol:
        raise ContourError(
            f"imaginary residue {val.imag:.3e} exceeds tol={tol:.3e} at "
            f"(r~={pt.r_tilde}, tau={pt.tau})", value=val)
    return val.real


def kernel_r(r, t, params, contour_angle=0.1, tol=1e-6):
    """Pair kernel K(r, t) = g0(r) + g^{3/2} Lambda(r~, tau), zero data."""
    if not (r > 0 and t > 0):
        raise DomainError(f"kernel_r needs r > 0 and t > 0, got ({r}, {t})")
    pt = scaled_point(r, t, params)
    lam = lambda_oracle(pt, contour_angle=contour_angle, tol=tol)
    return steady_g0_r(r, params) + params.g ** 1.5 * lam
