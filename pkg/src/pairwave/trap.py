"""Slowly varying trapping potential: Thomas-Fermi condensate profile,
locally rescaled pair-excitation dynamics inside the condensate region,
and the free-diffusion solution outside it.

The condensate profile solves the algebraic (Laplacian-free) stationary
equation: phi0^2 = (S - Ve)/(8 pi a rho0) on the region R = {Ve < S},
zero outside, with the threshold S fixed by the normalization
(1/Omega) int phi0^2 = 1.  The energy per particle then satisfies
E = 4 pi a rho0 zeta + zeta_e identically (S = 8 pi a rho0 zeta + zeta_e).
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import asymptotics, homogeneous
from .errors import (DataError, DomainError, InfeasibleTrapError,
                     RegionError, SolverError)
from .homogeneous import GasParams, ScaledPoint
from .quadrature import adaptive_quad


@dataclass(frozen=True)
class TrapModel:
    """External potential on a finite system volume.

    ve is a radial potential r -> energy for kind="radial" (the system
    volume is the ball of volume omega_volume), or a cartesian callable
    (x, y, z) -> energy for kind="cartesian" (volume is the centered cube).
    epsilon records the slowness scale of Ve(x) = Vtilde(epsilon x); it is
    reported but cannot be validated internally.
    """
    ve: Callable
    epsilon: float
    omega_volume: float
    params: GasParams
    kind: str = "radial"

    def __post_init__(self):
        if self.kind not in ("radial", "cartesian"):
            raise DomainError(f"unknown trap kind {self.kind!r}")
        if not self.omega_volume > 0:
            raise DomainError("system volume must be positive")


def constant_trap(v0, omega_volume, params):
    """Uniform potential; the homogeneous limit (phi0 = 1 everywhere)."""
    return TrapModel(ve=lambda r: v0, epsilon=0.0, omega_volume=omega_volume,
                     params=params)


def quadratic_trap(epsilon, omega_volume, params):
    """Isotropic quadratic trap Ve(r) = (epsilon r)^2."""
    return TrapModel(ve=lambda r: (epsilon * r) ** 2, epsilon=epsilon,
                     omega_volume=omega_volume, params=params)


@dataclass(frozen=True)
class RegionR:
    """Condensate support {x : Ve(x) < threshold}."""
    threshold: float
    ve: Callable
    kind: str

    def contains(self, position):
        return self._ve_at(position) < self.threshold

    def _ve_at(self, position):
        if self.kind == "radial":
            r = float(np.linalg.norm(position)) if np.ndim(position) else \
                abs(float(position))
            return self.ve(r)
        return self.ve(*position)


@dataclass(frozen=True)
class TFSolution:
    """Self-consistent Thomas-Fermi solution of one trap model."""
    model: TrapModel
    energy: float           # E, energy per particle
    zeta: float             # (1/Omega) int phi0^4
    zeta_e: float           # (1/Omega) int Ve phi0^2
    threshold: float        # S = 4 pi a rho0 zeta + E
    region: RegionR
    norm_residual: float
    phi0_sq_max: float

    def phi0(self, position):
        """Condensate amplitude at the given position (0 outside R)."""
        v = self.region._ve_at(position)
        if v >= self.threshold:
            return 0.0
        half_g = 0.5 * self.model.params.g
        return math.sqrt((self.threshold - v) / half_g)


def _radius_of_ball(volume):
    return (3.0 * volume / (4.0 * math.pi)) ** (1.0 / 3.0)


def _radial_moments(ve, s_threshold, r_out, power_phi2, weight_ve, rtol):
    """int_0^{r_out} 4 pi r^2 (S-Ve)_+^p [Ve]^w dr by adaptive quadrature."""

    def f(r):
        r = np.asarray(r, dtype=float)
        v = np.array([ve(float(ri)) for ri in r])
        exc = np.clip(s_threshold - v, 0.0, None) ** power_phi2
        if weight_ve:
            exc = exc * v
        return (4.0 * math.pi) * r * r * exc + 0.0j

    val, _ = adaptive_quad(f, 0.0, r_out, rtol=rtol, atol=1e-300)
    return val.real


def _cartesian_moments(ve, s_threshold, half_box, power_phi2, weight_ve, n):
    """Midpoint tensor-grid integral over the cube, with an n vs n/2
    refinement difference as the error estimate."""

    def grid_integral(nn):
        xs = (np.arange(nn) + 0.5) / nn * (2 * half_box) - half_box
        h = 2 * half_box / nn
        total = 0.0
        for x in xs:
            for y in xs:
                vz = np.array([ve(x, y, z) for z in xs])
                exc = np.clip(s_threshold - vz, 0.0, None) ** power_phi2
                if weight_ve:
                    exc = exc * vz
                total += exc.sum()
        return total * h ** 3

    coarse = grid_integral(n // 2)
    fine = grid_integral(n)
    return fine, abs(fine - coarse)


def solve_tf(model, tol=1e-10, grid_n=64):
    """Solve the Thomas-Fermi problem for the trap.

    Finds the threshold S with (1/Omega) int (S - Ve)_+/(g/2) = 1 by
    bracketed root iteration, then computes zeta, zeta_e and E.  Raises
    InfeasibleTrapError when the condensate region would touch the system
    boundary (except for the uniform trap, where R is the whole volume by
    construction), and SolverError if the root search fails.
    """
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}")
    params = model.params
    half_g = 0.5 * params.g
    target = half_g * model.omega_volume
    quad_rtol = min(1e-11, tol * 1e-2)

    if model.kind == "radial":
        r_out = _radius_of_ball(model.omega_volume)
        probe = np.linspace(0.0, r_out, 512)
        ve_vals = np.array([model.ve(float(r)) for r in probe])

        def excess(s):
            return _radial_moments(model.ve, s, r_out, 1, False, quad_rtol)
    else:
        half_box = 0.5 * model.omega_volume ** (1.0 / 3.0)
        axis = np.linspace(-half_box, half_box, 17)
        pts = [(x, y, z) for x in axis for y in axis for z in axis]
        ve_vals = np.array([model.ve(*p) for p in pts])

        def excess(s):
            return _cartesian_moments(model.ve, s, half_box, 1, False,
                                      grid_n)[0]

    ve_min = float(ve_vals.min())
    ve_span = float(ve_vals.max() - ve_vals.min())
    constant = ve_span < 1e-12 * max(1.0, abs(ve_min))

    if constant:
        # homogeneous limit: threshold and moments are algebraic, and
        # phi0 = 1 holds exactly
        s = ve_min + half_g
        region = RegionR(threshold=s, ve=model.ve, kind=model.kind)
        return TFSolution(model=model, energy=s - 0.25 * params.g,
                          zeta=1.0, zeta_e=ve_min, threshold=s,
                          region=region, norm_residual=0.0, phi0_sq_max=1.0)

    s_lo = ve_min
    s_hi = ve_min + max(1.0, 4.0 * half_g, ve_span)
    for _ in range(80):
        if excess(s_hi) >= target:
            break
        s_hi = ve_min + 2.0 * (s_hi - ve_min)
    else:
        raise SolverError("could not bracket the Thomas-Fermi threshold")
    try:
        s = brentq(lambda v: excess(v) - target, s_lo, s_hi,
                   xtol=tol * max(1.0, abs(s_hi)), rtol=8.9e-16)
    except ValueError as exc:
        raise SolverError(f"threshold root search failed: {exc}") from exc

    if model.kind == "radial":
        if model.ve(r_out) <= s:
            raise InfeasibleTrapError(
                "condensate region reaches the system boundary; enlarge the "
                "volume or steepen the trap")
    else:
        boundary = [model.ve(x, y, z) for (x, y, z) in pts
                    if max(abs(x), abs(y), abs(z)) >= half_box * (1 - 1e-9)]
        if boundary and min(boundary) <= s:
            raise InfeasibleTrapError(
                "condensate region reaches the system boundary; enlarge the "
                "volume or steepen the trap")

    omega_v = model.omega_volume
    if model.kind == "radial":
        norm = _radial_moments(model.ve, s, r_out, 1, False, quad_rtol) \
            / (half_g * omega_v)
        zeta = _radial_moments(model.ve, s, r_out, 2, False, quad_rtol) \
            / (half_g ** 2 * omega_v)
        zeta_e = _radial_moments(model.ve, s, r_out, 1, True, quad_rtol) \
            / (half_g * omega_v)
    else:
        norm = _cartesian_moments(model.ve, s, half_box, 1, False, grid_n)[0] \
            / (half_g * omega_v)
        zeta = _cartesian_moments(model.ve, s, half_box, 2, False, grid_n)[0] \
            / (half_g ** 2 * omega_v)
        zeta_e = _cartesian_moments(model.ve, s, half_box, 1, True, grid_n)[0] \
            / (half_g * omega_v)

    energy = s - 0.25 * params.g * zeta
    region = RegionR(threshold=s, ve=model.ve, kind=model.kind)
    return TFSolution(model=model, energy=energy, zeta=zeta, zeta_e=zeta_e,
                      threshold=s, region=region,
                      norm_residual=abs(norm - 1.0),
                      phi0_sq_max=(s - ve_min) / half_g)


DEFAULT_BOUNDARY_MARGIN = 0.05


def _phi0_sq_checked(position, tf, margin):
    phi0 = tf.phi0(position)
    phisq = phi0 * phi0
    if phisq < margin * tf.phi0_sq_max:
        raise RegionError(
            f"position {position} is outside the condensate region or too "
            f"close to its boundary (phi0^2 = {phisq:.3e}, margin "
            f"{margin:.2f} of max {tf.phi0_sq_max:.3e})")
    return phisq


def local_scaling(position, r, t, tf, margin=DEFAULT_BOUNDARY_MARGIN):
    """Locally rescaled non-dimensional variables at center of mass R:

        r~(R) = sqrt(g phi0(R)^2) r,   tau(R) = g phi0(R)^2 t.
    """
    phisq = _phi0_sq_checked(position, tf, margin)
    g_local = tf.model.params.g * phisq
    return ScaledPoint(r_tilde=math.sqrt(g_local) * r, tau=g_local * t)


def khat_slow(position, k, t, init, tf, margin=DEFAULT_BOUNDARY_MARGIN):
    """Fourier-space kernel at center of mass R inside the condensate.

    Identical to the homogeneous solution under rho0 -> rho0 phi0(R)^2.
    """
    phisq = _phi0_sq_checked(position, tf, margin)
    local = tf.model.params.rescaled(phisq)
    return homogeneous.khat_exact(k, t, init, local)


def steady_g0_slow(position, r, tf, margin=DEFAULT_BOUNDARY_MARGIN):
    """Steady-state kernel at R with the locally rescaled density."""
    phisq = _phi0_sq_checked(position, tf, margin)
    local = tf.model.params.rescaled(phisq)
    return homogeneous.steady_g0_r(r, local)


def exterior_kernel(position, r, t, init, tf=None, rtol=1e-11):
    """Pair kernel outside the condensate region: free diffusion of the
    initial data by the radial heat-kernel convolution

        K0(r, t) = (8 pi t)^{-3/2} (2 pi) (4 t / r)
                   int_0^inf rho f(rho) [e^{-(r-rho)^2/8t} - e^{-(r+rho)^2/8t}] d rho.

    R-independent; if a Thomas-Fermi solution is supplied the position is
    checked to lie outside the condensate region.
    """
    if not (t > 0 and r > 0):
        raise DomainError(f"exterior kernel needs r > 0, t > 0, got ({r}, {t})")
    if tf is not None and tf.region.contains(position):
        raise RegionError(f"position {position} lies inside the condensate "
                          f"region")
    if init.zero_flag:
        return 0.0

    # truncation radius from the decay of rho^2 |f|
    rho_max = None
    scale = max(abs(init.f0(0.0)), abs(init.f0(1.0)), 1e-300)
    for cand in np.geomspace(1.0, 1e6, 121):
        if cand * cand * abs(init.f0(cand)) < 1e-18 * scale:
            rho_max = cand
            break
    if rho_max is None:
        raise DataError("initial data does not decay; cannot convolve")
    rho_max = max(rho_max, r + 12.0 * math.sqrt(2.0 * t))

    inv8t = 1.0 / (8.0 * t)

    def f(rho):
        rho = np.asarray(rho, dtype=float)
        fv = np.array([init.f0(float(p)) for p in rho])
        gauss = np.exp(-inv8t * (r - rho) ** 2) - np.exp(-inv8t * (r + rho) ** 2)
        return rho * fv * gauss + 0.0j

    val, _ = adaptive_quad(f, 0.0, rho_max, rtol=rtol, atol=1e-300)
    pref = (8.0 * math.pi * t) ** -1.5 * 2.0 * math.pi * (4.0 * t / r)
    return pref * val.real


def lambda_slow(position, r, t, tf, method="asymptotic",
                margin=DEFAULT_BOUNDARY_MARGIN, **kwargs):
    """Deviation kernel at center of mass R inside the condensate:
    the homogeneous Lambda evaluated at the locally rescaled point."""
    pt = local_scaling(position, r, t, tf, margin=margin)
    if method == "asymptotic":
        return asymptotics.lambda_asymptotic(pt, **kwargs)
    if method == "oracle":
        return homogeneous.lambda_oracle(pt, **kwargs)
    raise DomainError(f"unknown lambda_slow method {method!r}")
