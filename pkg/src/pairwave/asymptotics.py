"""Large-tau evaluation of the deviation kernel Lambda(r~, tau).

The geometric-series expansion of the exact integral produces one
oscillatory integral I_{l,+} and one endpoint integral I_{l,-} per mode l.
The minus integrals always sum to a polygamma closed form.  The plus
integrals change character as l crosses r~/(2 tau): endpoint-dominated
(region I), stationary-phase (region II), or coalescence of the stationary
point with the endpoint (region III), the last described by a Lommel
function of order (0, 1/3).  lambda_asymptotic stitches the per-mode forms
together and telescopes the deep region-I tail with polygamma identities,
so nothing is truncated.
"""
import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AssemblyError, DomainError
from .specfun.bessel import hankel1_13
from .specfun.lommel import ORDER_13, lommel_S
from .specfun.polygamma import polygamma

SQRT3 = math.sqrt(3.0)
# coefficient of H1_{1/3} in the branch continuations
_KAPPA = (math.pi / 2) * SQRT3 * np.exp(-1j * math.pi / 3)

#: Region-III half-width in units of (l tau)^{1/3}.  Set where the
#: region-I and region-III forms for I_{l,+} agree to ~3% (the residual
#: Lommel correction at the boundary scales like 60/c^3), which also puts
#: the III/II handover inside the connection formula's validity.
DEFAULT_REGION_THRESH = 13.0

#: Soft validity floor in tau; below it results are still computed but a
#: low-confidence warning is emitted.
TAU_FLOOR = 10.0


class LowConfidenceWarning(UserWarning):
    """Asymptotic result requested below the soft validity floor."""


class Region(enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class PhaseData:
    """Per-mode stationary-phase bundle for I_{l,+}."""
    l: int
    beta_l: float
    eta_l: Optional[float]        # None when beta_l < 1 (no real point)
    theta: Optional[float]        # Theta(eta_l) > 0
    theta_pp: Optional[float]     # Theta''(eta_l) < 0
    gamma_abs: float
    gamma_tilde: complex
    gamma_breve: complex
    eta_bar: Optional[complex]


def stationary_point(l, pt):
    """Stationary-phase data for mode l at the scaled point."""
    if l < 1:
        raise DomainError(f"mode index must be >= 1, got {l}")
    rt, tau = pt.r_tilde, pt.tau
    lt = l * tau
    beta = rt / (2.0 * lt)
    w = 2.0 * lt - rt
    gamma_abs = (2.0 / 3.0 ** 1.5) * abs(w) ** 1.5 / math.sqrt(lt)
    gamma_tilde = (2.0 / 3.0 ** 1.5) * (w - 4j * l) ** 1.5 / math.sqrt(lt)
    gamma_breve = (2.0 / 3.0 ** 1.5) * (-w + 4j * l) ** 1.5 / math.sqrt(lt)
    if beta < 1.0:
        return PhaseData(l=l, beta_l=beta, eta_l=None, theta=None,
                         theta_pp=None, gamma_abs=gamma_abs,
                         gamma_tilde=gamma_tilde, gamma_breve=gamma_breve,
                         eta_bar=None)
    ch = (beta + math.sqrt(beta * beta + 8.0)) / 4.0
    eta = math.acosh(ch)
    sh = math.sinh(eta)
    theta = (rt - 2.0 * lt * ch) * sh
    theta_pp = (rt - 8.0 * lt * ch) * sh
    eta_bar = np.sqrt(eta * eta + 4j / (3.0 * tau))
    return PhaseData(l=l, beta_l=beta, eta_l=eta, theta=theta,
                     theta_pp=theta_pp, gamma_abs=gamma_abs,
                     gamma_tilde=gamma_tilde, gamma_breve=gamma_breve,
                     eta_bar=eta_bar)


def classify_region(l, pt, c_thresh=DEFAULT_REGION_THRESH):
    """Region tag for mode l: coalescence window III, else I/II by side."""
    if not c_thresh > 0:
        raise DomainError(f"c_thresh must be > 0, got {c_thresh}")
    rt, tau = pt.r_tilde, pt.tau
    w = 2.0 * l * tau - rt
    if abs(w) <= c_thresh * (l * tau) ** (1.0 / 3.0):
        return Region.III
    return Region.I if w > 0 else Region.II


def i_minus_term(l, pt):
    """Endpoint value of a single minus integral, 4/(2 l tau + r~)^3."""
    return 4.0 / (2.0 * l * pt.tau + pt.r_tilde) ** 3


def i_minus_sum(pt):
    """Sum of all minus integrals, -(1/(4 tau^3)) psi''(1 + r~/(2 tau))."""
    x = pt.r_tilde / (2.0 * pt.tau)
    return -polygamma(2, 1.0 + x).real / (4.0 * pt.tau ** 3)


def _i_plus_region1(l, pt):
    return 4.0 / (2.0 * l * pt.tau - pt.r_tilde - 4j * l) ** 3


def _i_plus_region3(l, pt, ph=None):
    ph = ph or stationary_point(l, pt)
    lt = l * pt.tau
    w = 2.0 * lt - pt.r_tilde - 4j * l
    return -2.0 / (3.0 * lt) \
        + (4j / 3.0) * (w / (3.0 * lt)) ** 1.5 * lommel_S(ORDER_13,
                                                          1j * ph.gamma_tilde)


def _i_plus_region2(l, pt, ph=None):
    ph = ph or stationary_point(l, pt)
    if ph.eta_l is None:
        raise DomainError(
            f"stationary-phase form needs beta_l >= 1, got beta={ph.beta_l}")
    return -math.sqrt(math.pi / (2.0 * abs(ph.theta_pp))) \
        * np.exp(1j * ph.theta + 1j * math.pi / 4) \
        * math.sinh(2.0 * ph.eta_l) ** 2 * math.exp(-4.0 * l * ph.eta_l)


def _i_plus_connection(l, pt, ph=None):
    ph = ph or stationary_point(l, pt)
    if ph.eta_l is None:
        raise DomainError(
            f"connection formula needs beta_l >= 1, got beta={ph.beta_l}")
    eta, theta = ph.eta_l, ph.theta
    ch = math.cosh(eta)
    denom = math.sqrt(1.0 + 2.0 * ch * ch)
    if theta <= 0.0:
        # beta_l = 1 exactly: the formula degenerates to the endpoint value
        return -2.0 / (SQRT3 * denom * l * pt.tau) * ch ** 3
    arg = theta * (1.0 + 1j * (8.0 / 3.0) * l * eta / theta) ** 1.5
    # S_{0,1/3}(arg e^{-i pi}) via the continuation identity
    s_rot = -lommel_S(ORDER_13, arg) - _KAPPA * hankel1_13(arg)
    eb = ph.eta_bar
    return (-(2.0 / SQRT3) * ch ** 3 / (denom * l * pt.tau)
            - (1.0 / SQRT3) * (np.sinh(eb) * np.sinh(2.0 * eb) ** 2 / denom)
            * s_rot)


def i_plus(l, pt, mode="auto", c_thresh=DEFAULT_REGION_THRESH):
    """Asymptotic value of the oscillatory mode integral I_{l,+}.

    mode selects the formula: "regionI" (endpoint), "regionII" (stationary
    phase), "regionIII" (Lommel transition, valid on both sides of the
    coalescence), "connection" (uniform formula, needs beta_l >= 1), or
    "auto", which dispatches on classify_region and uses the connection
    formula in regions II and III whenever beta_l >= 1.
    """
    if l < 1:
        raise DomainError(f"mode index must be >= 1, got {l}")
    ph = stationary_point(l, pt)
    if mode == "regionI":
        return _i_plus_region1(l, pt)
    if mode == "regionII":
        return _i_plus_region2(l, pt, ph)
    if mode == "regionIII":
        return _i_plus_region3(l, pt, ph)
    if mode == "connection":
        return _i_plus_connection(l, pt, ph)
    if mode != "auto":
        raise DomainError(f"unknown i_plus mode {mode!r}")
    region = classify_region(l, pt, c_thresh)
    if region is Region.I:
        return _i_plus_region1(l, pt)
    if ph.beta_l >= 1.0 and ph.eta_l is not None:
        return _i_plus_connection(l, pt, ph)
    return _i_plus_region3(l, pt, ph)


def remainder_bound(M, pt, simplified=False):
    """Tail estimate R_M for the truncated geometric expansion.

    |psi'''((M+1)(1 - 2i/tau))| r~ / (4 tau^4), or the large-M form
    r~ / (2 tau^4 (M+1)^3) when simplified=True.  Uniform in r~ after
    dividing by r~.
    """
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    rt, tau = pt.r_tilde, pt.tau
    if simplified:
        return rt / (2.0 * tau ** 4 * (M + 1) ** 3)
    val = polygamma(3, (M + 1) * (1.0 - 2j / tau))
    return rt * abs(val) / (4.0 * tau ** 4)


def lambda_small_r(pt):
    """Closed form for r~ well below the first coalescence radius 2 tau:

        Lambda = [psi''(1 + x) - psi''(1 - x)] / (8 pi^2 r~ tau^3),
        x = r~/(2 tau).

    Requires 2 tau - r~ >> tau^{1/3} (checked for l = 1)."""
    rt, tau = pt.r_tilde, pt.tau
    if not rt > 0:
        raise DomainError("lambda_small_r needs r_tilde > 0")
    if 2.0 * tau - rt <= DEFAULT_REGION_THRESH * tau ** (1.0 / 3.0):
        raise DomainError(
            f"r~={rt} too close to the l=1 coalescence radius 2 tau={2*tau}")
    x = rt / (2.0 * tau)
    bracket = (polygamma(2, 1.0 + x) - polygamma(2, 1.0 - x)).real
    return bracket / (8.0 * math.pi ** 2 * rt * tau ** 3)


def lambda_asymptotic_complex(pt, c_thresh=DEFAULT_REGION_THRESH):
    """Complex master assembly of Lambda(r~, tau); see lambda_asymptotic."""
    rt, tau = pt.r_tilde, pt.tau
    if not rt > 0:
        raise DomainError("lambda_asymptotic needs r_tilde > 0")
    if tau < TAU_FLOOR:
        warnings.warn(
            f"tau={tau} is below the asymptotic validity floor {TAU_FLOOR}",
            LowConfidenceWarning, stacklevel=3)
    x = rt / (2.0 * tau)
    total = 0.0 + 0.0j
    l = 1
    while True:
        region = classify_region(l, pt, c_thresh)
        if region is Region.I:
            break
        ph = stationary_point(l, pt)
        if region is Region.II:
            total += _i_plus_region2(l, pt, ph)
        elif ph.beta_l > 1.0:
            total += _i_plus_connection(l, pt, ph)
        else:
            total += _i_plus_region3(l, pt, ph)
        l += 1
        if l > 100000:
            raise AssemblyError("mode dispatch failed to reach region I")
    # exact polygamma telescope of the endpoint forms for all l >= l_start:
    # sum 4/(2 l tau - r~)^3 = -psi''(l_start - x)/(4 tau^3)
    total += -polygamma(2, l - x) / (4.0 * tau ** 3)
    # minus-integral sum enters with opposite sign
    total += polygamma(2, 1.0 + x) / (4.0 * tau ** 3)
    value = total / (2.0 * math.pi ** 2 * rt)
    if not np.isfinite(value):
        raise AssemblyError(f"non-finite assembly at {pt}", value=value)
    return value


def lambda_asymptotic(pt, c_thresh=DEFAULT_REGION_THRESH):
    """Large-tau deviation kernel Lambda(r~, tau) for zero initial data.

    Per-mode dispatch: connection formula (uniform, Lommel-based) for
    beta_l > 1 inside the coalescence window, plain stationary phase deep
    in region II, the shifted Lommel transition form inside the window on
    the beta_l <= 1 side, and an exact polygamma telescope for the entire
    endpoint-dominated remainder (regions I and the minus integrals), so
    the mode series carries no truncation error.

    Returns the real part.  Like the exact kernel, the asymptotic value
    carries a genuine imaginary component (O(10/tau) relative at moderate
    r~, up to O(1) near coalescence radii); use
    lambda_asymptotic_complex for the full value.
    """
    return lambda_asymptotic_complex(pt, c_thresh=c_thresh).real


def region_profile(pt, c_thresh=DEFAULT_REGION_THRESH, max_l=6):
    """Compact dispatch summary for reporting: e.g. 'l1:II l2:III l3+:I'."""
    parts = []
    for l in range(1, max_l + 1):
        region = classify_region(l, pt, c_thresh)
        parts.append(f"l{l}:{region.value}")
        if region is Region.I:
            parts[-1] = f"l{l}+:I"
            break
    return " ".join(parts)
