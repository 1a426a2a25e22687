"""Bessel functions of order 1/3 for complex argument (principal branch).

J and Y come from the ascending series for |z| <= 12 and from the Hankel
asymptotic expansions beyond; the switchover is validated by tests in the
handover band.  K uses the real-axis integral representation

    K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt   (Re z > 0)

wherever the sector allows and otherwise routes through a Hankel function
of rotated argument (DLMF 10.27.8).  H1 in the upper half-plane, where it
is exponentially small, routes through K for full relative accuracy.
"""
import math

import numpy as np

from ..errors import DomainError
from ..quadrature import adaptive_quad

NU = 1.0 / 3.0
_GAMMA_4_3 = 0.8929795115692492  # Gamma(1 + 1/3)
_GAMMA_2_3 = 1.3541179394264005  # Gamma(1 - 1/3)
_SERIES_MAX = 12.0


def _series_j(nu, gamma_1p_nu, z):
    """Ascending series for J_nu, nu = +-1/3."""
    half = 0.5 * z
    term = np.exp(nu * np.log(half)) / gamma_1p_nu
    total = term
    zz = -half * half
    for m in range(400):
        term = term * zz / ((m + 1) * (nu + m + 1))
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total
    raise DomainError(f"Bessel series did not converge at z={z}")


def _hankel_pair_asym(z):
    """(H1, H2) of order 1/3 from the large-|z| expansions."""
    omega = z - NU * np.pi / 2 - np.pi / 4
    pref = np.sqrt(2.0 / (np.pi * z))
    mu4 = 4.0 * NU * NU
    p1 = p2 = 1.0 + 0.0j
    a = 1.0
    ik = 1.0 + 0.0j
    zk = 1.0 + 0.0j
    last = np.inf
    for k in range(1, 60):
        a *= (mu4 - (2 * k - 1) ** 2) / (8.0 * k)
        ik *= 1j
        zk *= z
        mag = abs(a / zk)
        if mag >= last:
            break
        last = mag
        p1 += ik * a / zk
        p2 += np.conj(ik) * a / zk
        if mag < 1e-17:
            break
    h1 = pref * np.exp(1j * omega) * p1
    h2 = pref * np.exp(-1j * omega) * p2
    return h1, h2


def _jy_right_half(z):
    """(J, Y) of order 1/3 for Re z >= 0 (series or Hankel asymptotics)."""
    if abs(z) <= _SERIES_MAX:
        jp = _series_j(NU, _GAMMA_4_3, z)
        jm = _series_j(-NU, _GAMMA_2_3, z)
        y = (0.5 * jp - jm) / (0.5 * np.sqrt(3.0))
        return jp, y
    h1, h2 = _hankel_pair_asym(z)
    return 0.5 * (h1 + h2), (h1 - h2) / 2j


def _jy(z):
    """(J, Y) of order 1/3 anywhere on the principal branch.

    Near the negative real axis the two Hankel expansions sit at their
    Stokes boundaries, so for Re z < 0 (outside the series disc) the values
    come from the right half-plane via the exact rotation identities
    J(z e^{+-i pi}) = e^{+-i nu pi} J(z),
    Y(z e^{+-i pi}) = e^{-+i nu pi} Y(z) +- 2i cos(nu pi) J(z).
    """
    if abs(z) <= _SERIES_MAX or z.real >= 0:
        return _jy_right_half(z)
    w = -z  # arg w = arg z -+ pi, in the right half-plane
    jw, yw = _jy_right_half(w)
    if math.copysign(1.0, z.imag) > 0:
        j = np.exp(1j * NU * np.pi) * jw
        y = np.exp(-1j * NU * np.pi) * yw + 2j * np.cos(NU * np.pi) * jw
    else:
        j = np.exp(-1j * NU * np.pi) * jw
        y = np.exp(1j * NU * np.pi) * yw - 2j * np.cos(NU * np.pi) * jw
    return j, y


def besselj13(z):
    z = complex(z)
    if z == 0:
        raise DomainError("J_{1/3} branch point at z=0")
    return _jy(z)[0]


def bessely13(z):
    z = complex(z)
    if z == 0:
        raise DomainError("Y_{1/3} branch point at z=0")
    return _jy(z)[1]


def hankel1_13(z):
    z = complex(z)
    if z == 0:
        raise DomainError("H1_{1/3} branch point at z=0")
    if abs(z) <= _SERIES_MAX:
        if z.imag > 0.25 * abs(z):
            # series J + iY cancels badly where H1 is exponentially small;
            # K on the right half-plane is computed by a stable integral
            return (2.0 / (np.pi * 1j)) * np.exp(-1j * NU * np.pi / 2) \
                * besselk13(-1j * z)
        j, y = _jy(z)
        return j + 1j * y
    if z.imag >= 0 or z.real >= 0:
        # H1's own expansion is valid and relatively accurate here,
        # including where H1 is exponentially small
        h1, _ = _hankel_pair_asym(z)
        return h1
    # third quadrant: H1 is the dominant solution; J + iY via reflection
    j, y = _jy(z)
    return j + 1j * y


def _hankel2_13(z):
    z = complex(z)
    if abs(z) <= _SERIES_MAX:
        # H2_nu(z) = conj(H1_nu(conj z)) for real nu
        return np.conj(hankel1_13(np.conj(z)))
    _, h2 = _hankel_pair_asym(z)
    return h2


def _k13_integral(z):
    big = np.arccosh(1.0 + (60.0 + np.log1p(1.0 / z.real)) / z.real)

    def f(t):
        return np.exp(-z * np.cosh(t)) * np.cosh(NU * t)

    val, _ = adaptive_quad(f, 0.0, big, rtol=1e-13)
    return val


def besselk13(z):
    z = complex(z)
    if z == 0:
        raise DomainError("K_{1/3} branch point at z=0")
    if z.real >= 0.2 * abs(z):
        return _k13_integral(z)
    # sector routing terminates because the rotated argument of the Hankel
    # routes lands back in the integral sector after at most two hops
    if z.imag >= 0:
        return -(np.pi * 1j / 2) * np.exp(-1j * NU * np.pi / 2) \
            * _hankel2_13(-1j * z)
    return (np.pi * 1j / 2) * np.exp(1j * NU * np.pi / 2) \
        * hankel1_13(1j * z)


_KINDS = {
    "J": besselj13,
    "Y": bessely13,
    "H1": hankel1_13,
    "K": besselk13,
}


def bessel_third(kind, z):
    """Order-1/3 Bessel function of the requested kind at complex z.

    kind is one of "J", "Y", "H1", "K"; z != 0 on the principal branch.
    """
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise DomainError(f"unknown Bessel kind {kind!r}") from None
    return fn(z)
