"""Lommel functions S_{mu,nu} of the second kind and their continuations.

Supported orders: (0, 0), (0, 1/3), (0, 4).  For |z| below the switchover
the function is assembled as

    S_{mu,nu}(z) = s_{mu,nu}(z) + bessel correction term,

where s is the convergent power series expressed through 1F2 and the
correction is 2^{mu-1} Gamma((mu-nu+1)/2) Gamma((mu+nu+1)/2)
[sin((mu-nu)pi/2) J_nu - cos((mu-nu)pi/2) Y_nu]; for (0,1/3) this reduces
to -(pi/2)[tan(pi/6) J_{1/3} + Y_{1/3}].  Beyond the switchover the
algebraic large-argument expansion is summed to its smallest term; its
truncation error scales like exp(-|z|), which pins the switchover at 24.

Branch shifts (arguments z e^{-i pi} and z e^{2 i pi}) are always produced
by the continuation identities, never by rotating z off the principal
branch.

Accuracy: near the real axis, full double precision (~1e-12 relative or
better).  Towards the imaginary axis the series part and the Bessel
correction both grow like exp(|Im z|) while S stays O(1/z), so roughly
|Im z|/ln(10) digits are lost to that cancellation; callers that need the
imaginary-axis difference S_{0,0} - S_{0,4} should use steady_imag_diff,
which switches to a dedicated expansion.
"""
from dataclasses import dataclass
from decimal import Decimal, getcontext

import numpy as np
from scipy.special import yv

from ..errors import DomainError
from .bessel import besselj13, besselk13, bessely13, hankel1_13
from .hyp import hyp1f2

_ASYM_MIN = 24.0
# (pi/2) sqrt(3) e^{-i pi/3}: coefficient of H1_{1/3} in the continuations
_KAPPA = (np.pi / 2) * np.sqrt(3.0) * np.exp(-1j * np.pi / 3)

# 42-digit constants for the high-precision real-axis path
_D_G43 = "0.89297951156924921121856431365822588137623"   # Gamma(4/3)
_D_G23 = "1.35411793942640041694528802815451378551933"   # Gamma(2/3)
_D_PI = "3.14159265358979323846264338327950288419717"
_D_SQ3 = "1.73205080756887729352744634150587236694281"


def _j13_pair_decimal(x):
    """(J_{1/3}(x), J_{-1/3}(x)) for real x > 0 in 50-digit decimals."""
    getcontext().prec = 50
    xd = Decimal(x)
    half = xd / 2
    cbrt = (half.ln() / 3).exp()
    w = -half * half
    out = []
    for sign, gconst in ((1, _D_G43), (-1, _D_G23)):
        t = (cbrt if sign > 0 else 1 / cbrt) / Decimal(gconst)
        total = t
        for m in range(400):
            t = t * w * 3 / ((m + 1) * (3 * m + 3 + sign))
            total += t
            if abs(t) < Decimal("1e-45") * abs(total):
                break
        out.append(total)
    return out[0], out[1]


def _lommel13_series_decimal(x):
    """S_{0,1/3}(x) for real x > 0, entirely in decimal arithmetic.

    Used on the real-axis band where the alternating series and the
    s-vs-Bessel-term combination both cancel; gives the value to full
    double precision so finite-difference oracles are not polluted."""
    getcontext().prec = 50
    xd = Decimal(x)
    w = -xd * xd / 4
    # 1F2(1; 4/3, 5/3; w): (4/3+n)(5/3+n) = (3n+4)(3n+5)/9
    t = Decimal(1)
    f = Decimal(1)
    for n in range(400):
        t = t * w * 9 / ((3 * n + 4) * (3 * n + 5))
        f += t
        if abs(t) < Decimal("1e-45") * abs(f):
            break
    s_part = xd * 9 / 8 * f
    jp, jm = _j13_pair_decimal(x)
    pi = Decimal(_D_PI)
    sq3 = Decimal(_D_SQ3)
    y = (jp / 2 - jm) * 2 / sq3
    corr = -(pi / 2) * (jp / sq3 + y)
    return float(s_part + corr)


@dataclass(frozen=True)
class LommelOrder:
    """Order pair (mu, nu) of S_{mu,nu}."""
    mu: float
    nu: float

    def __post_init__(self):
        if abs((self.mu + 1.0) ** 2 - self.nu ** 2) < 1e-12:
            raise DomainError(
                f"Lommel order ({self.mu}, {self.nu}) hits the series pole "
                f"(mu+1)^2 = nu^2")


ORDER_00 = LommelOrder(0.0, 0.0)
ORDER_13 = LommelOrder(0.0, 1.0 / 3.0)
ORDER_04 = LommelOrder(0.0, 4.0)

_SUPPORTED = (ORDER_00, ORDER_13, ORDER_04)


def _check_order(order):
    if order not in _SUPPORTED:
        raise DomainError(f"unsupported Lommel order {order}")


def lommel_s_series(order, z):
    """Power-series part s_{mu,nu}(z) (the '1F2 half' of S)."""
    _check_order(order)
    z = complex(z)
    mu, nu = order.mu, order.nu
    pref = z ** (mu + 1.0) / ((mu + 1.0) ** 2 - nu ** 2)
    return pref * hyp1f2((mu - nu + 3.0) / 2.0, (mu + nu + 3.0) / 2.0,
                         -0.25 * z * z)


def _bessel_correction(order, z):
    if order == ORDER_13:
        return -(np.pi / 2) * (np.tan(np.pi / 6) * besselj13(z)
                               + bessely13(z))
    # for (0,0) and (0,4) the J coefficient sin((mu-nu)pi/2) vanishes and
    # the general constant collapses to -(pi/2)
    return -(np.pi / 2) * yv(order.nu, z)


def lommel_s_asym(order, z):
    """Algebraic large-argument expansion of S_{0,nu}, smallest-term cut."""
    _check_order(order)
    z = complex(z)
    nu2 = order.nu ** 2
    total = 0.0 + 0.0j
    c = 1.0
    prev = np.inf
    for m in range(0, 80):
        if m > 0:
            c *= (2 * m - 1) ** 2 - nu2
        term = (-1.0) ** m * c / z ** (2 * m + 1)
        mag = abs(term)
        if mag >= prev:
            break
        total += term
        prev = mag
        if mag < 1e-18 * abs(total):
            break
    return total


def lommel_S(order, z, branch_offset=0):
    """Lommel S_{mu,nu}(z), optionally continued across the branch cut.

    branch_offset selects the sheet: 0 evaluates S(z) on the principal
    branch; -1 returns S(z e^{-i pi}) and +2 returns S(z e^{2 i pi}),
    both via the continuation identities (order (0,1/3) only).
    """
    _check_order(order)
    z = complex(z)
    if z == 0:
        raise DomainError("Lommel S evaluated at z=0")
    if branch_offset == 0:
        if abs(z) >= _ASYM_MIN:
            return lommel_s_asym(order, z)
        if order == ORDER_13 and z.imag == 0.0 and 2.5 <= z.real < _ASYM_MIN:
            # real-axis cancellation band: sum everything in decimal
            return complex(_lommel13_series_decimal(z.real))
        return lommel_s_series(order, z) + _bessel_correction(order, z)
    if order != ORDER_13:
        raise DomainError(
            f"branch continuation only implemented for (0,1/3), got {order}")
    base = lommel_S(order, z)
    if branch_offset == -1:
        return -base - _KAPPA * hankel1_13(z)
    if branch_offset == 2:
        return base + _KAPPA * hankel1_13(z)
    raise DomainError(f"branch_offset must be -1, 0 or +2, got {branch_offset}")


def lommel_modified_identities(z):
    """Residuals of the two modified-argument continuation identities.

    For real z > 0 returns (r1, r2) with

        r1 = S(i z e^{-i pi}) + S(i z) - sqrt(3) K_{1/3}(z)
        r2 = S(i z e^{2 i pi}) - S(i z) + sqrt(3) K_{1/3}(z)

    where the rotated values come from the branch_offset continuations.
    Both vanish identically in exact arithmetic; the computed residuals
    measure the mutual consistency of the H1 and K implementations.
    """
    if not z > 0:
        raise DomainError(f"modified identities need real z > 0, got {z}")
    w = 1j * z
    s0 = lommel_S(ORDER_13, w)
    k = besselk13(z)
    r1 = lommel_S(ORDER_13, w, branch_offset=-1) + s0 - np.sqrt(3.0) * k
    r2 = lommel_S(ORDER_13, w, branch_offset=2) - s0 + np.sqrt(3.0) * k
    return r1, r2


def steady_imag_diff(chi):
    """Im[S_{0,0}(i chi) - S_{0,4}(i chi)] for real chi > 0.

    Dedicated path for the steady-state kernel: the direct difference
    cancels like exp(chi), so beyond chi = 20 the asymptotic expansion of
    the difference is used instead.
    """
    if not chi > 0:
        raise DomainError(f"steady_imag_diff needs chi > 0, got {chi}")
    if chi < 20.0:
        w = 1j * chi
        return (lommel_S(ORDER_00, w) - lommel_S(ORDER_04, w)).imag
    total = 0.0
    c0 = c4 = 1.0
    prev = np.inf
    for m in range(1, 60):
        c0 *= (2 * m - 1) ** 2
        c4 *= (2 * m - 1) ** 2 - 16.0
        term = (c4 - c0) / chi ** (2 * m + 1)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
    return total
