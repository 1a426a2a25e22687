"""Analytic structure of the zero-data propagator U(k) (units 16 pi a rho0 = 1).

U(k) has only simple poles, located where (t/2) sinh(2 eta) - 2 i eta = m pi
with k = sinh(eta), m a nonzero integer; they lie in the first and third
quadrants of the k plane.  Newton iteration runs in the eta plane, where
the pole condition is entire, seeded by the analytic small/large |m|pi/t
estimates.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError

_NEWTON_MAX_ITER = 100
_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class PoleRecord:
    """One refined propagator pole."""
    m: int
    eta: complex
    k: complex
    residual: float

    @property
    def quadrant(self):
        if self.k.real > 0 and self.k.imag > 0:
            return "I"
        if self.k.real < 0 and self.k.imag < 0:
            return "III"
        return "II" if self.k.imag > 0 else "IV"


def _sin_over(w):
    """sin(w)/w, stable near w = 0, complex-capable."""
    w = complex(w)
    if abs(w) < 1e-6:
        w2 = w * w
        return 1.0 - w2 / 6.0 * (1.0 - w2 / 20.0)
    return np.sin(w) / w


def u_eval(k, t):
    """Propagator U(k) at time t via the pole-revealing form

        U = -i S / (2 i (k^2 + 1/2) S + cos(w t)),  S = sin(w t)/(2 w),

    which is even in w = k sqrt(k^2+1), hence single-valued in k and
    manifestly regular at the branch points k = 0, +-i.  (The factor 2 in
    the denominator is required for equivalence with the defining
    geometric-series form; the refined poles annihilate exactly this
    denominator.)
    """
    k = complex(k)
    w = k * np.sqrt(k * k + 1.0)
    s = 0.5 * t * _sin_over(w * t)
    den = 2j * (k * k + 0.5) * s + np.cos(w * t)
    scale = max(abs(s) * abs(k * k + 0.5), 1.0)
    if abs(den) < 1e-13 * scale:
        hint = None
        if t > 0:
            cands = [pole_estimate(m, t) for m in
                     list(range(-20, 0)) + list(range(1, 21))]
            hint = min((np.sinh(e) for e in cands), key=lambda kk: abs(kk - k))
        raise SingularityError(
            f"U(k) evaluated at a pole (k={k}, t={t})", hint=hint)
    return -1j * s / den


def pole_estimate(m, t):
    """Analytic pole-location estimate in the eta plane.

    eta ~ m pi/(t - 2i) for |m| pi << t and
    eta ~ (1/2) sg(m) (1 + i/(|m| pi)) ln(4 |m| pi / t) for |m| pi >> t;
    the small-|m| branch is used up to |m| pi = t.
    """
    if m == 0:
        raise DomainError("pole index m must be nonzero")
    if not t > 0:
        raise DomainError(f"need t > 0, got {t}")
    am = abs(m)
    if am * math.pi <= t:
        return m * math.pi / (t - 2j)
    sg = 1.0 if m > 0 else -1.0
    return 0.5 * sg * (1.0 + 1j / (am * math.pi)) \
        * math.log(4.0 * am * math.pi / t)


def _pole_condition(eta, t):
    return 0.5 * t * np.sinh(2.0 * eta) - 2j * eta


def find_poles(t, m_values):
    """Newton-refine the poles for each index in m_values.

    Returns (records, failed) where records is a list of PoleRecord with
    residual < 1e-10 and failed lists the indices whose Newton iteration
    did not converge (no global abort).
    """
    if not t > 0:
        raise DomainError(f"need t > 0, got {t}")
    m_values = list(m_values)
    if any(m == 0 for m in m_values):
        raise DomainError("pole index m = 0 is excluded")
    records, failed = [], []
    for m in m_values:
        eta = complex(pole_estimate(m, t))
        target = m * math.pi
        ok = False
        for _ in range(_NEWTON_MAX_ITER):
            f = _pole_condition(eta, t) - target
            if abs(f) < _RESIDUAL_TOL:
                ok = True
                break
            fp = t * np.cosh(2.0 * eta) - 2j
            if fp == 0:
                break
            eta = eta - f / fp
        if not ok:
            failed.append(m)
            continue
        residual = abs(_pole_condition(eta, t) - target)
        records.append(PoleRecord(m=m, eta=eta, k=complex(np.sinh(eta)),
                                  residual=residual))
    return records, failed
