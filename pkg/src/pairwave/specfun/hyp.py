"""The hypergeometric series 1F2(1; b1, b2; z).

Always convergent; summed by the two-term recurrence in double precision
with a cancellation monitor.  When the alternating series loses more than
~4 digits to cancellation the sum is repeated in 50-digit decimal
arithmetic, so the returned value is reliable to ~1e-12 relative even deep
in the cancellation regime (|z| up to several hundred).
"""
from decimal import Decimal, getcontext

from ..errors import AccuracyError, DomainError

TERM_CAP = 10_000
_STOP = 1e-17
# re-sum in decimal once cancellation costs more than ~1.5 digits, so the
# double-precision path never leaks more than ~1e-14 relative error
_ESCALATE_LOSS = 30.0
_DECIMAL_DIGITS = 50


def _is_nonpositive_int(b):
    return b <= 0 and abs(b - round(b)) < 1e-12


def _sum_double(b1, b2, z):
    total = term = 1.0 + 0.0j
    peak = 1.0
    for n in range(TERM_CAP):
        term = term * z / ((b1 + n) * (b2 + n))
        total += term
        peak = max(peak, abs(total))
        if abs(term) < _STOP * abs(total):
            return total, peak
    raise AccuracyError(
        f"1F2(1;{b1},{b2};z) did not converge within {TERM_CAP} terms")


def _sum_decimal(b1, b2, z):
    getcontext().prec = _DECIMAL_DIGITS
    zre, zim = Decimal(z.real), Decimal(z.imag)
    tre, tim = Decimal(1), Decimal(0)
    sre, sim = Decimal(1), Decimal(0)
    db1, db2 = Decimal(b1), Decimal(b2)
    stop = Decimal(_STOP)
    for n in range(TERM_CAP):
        d = (db1 + n) * (db2 + n)
        tre, tim = (tre * zre - tim * zim) / d, (tre * zim + tim * zre) / d
        sre += tre
        sim += tim
        if abs(tre) + abs(tim) < stop * (abs(sre) + abs(sim)):
            return complex(float(sre), float(sim))
    raise AccuracyError(
        f"1F2(1;{b1},{b2};z) did not converge within {TERM_CAP} terms")


def hyp1f2(b1, b2, z):
    """1F2(1; b1, b2; z) for complex z.

    b1, b2 must not be non-positive integers (negative half-integers are
    fine).  Relative accuracy ~1e-12 for |z| <= 100 and degrades gracefully
    beyond (the decimal fallback keeps ~1e-12 up to |z| of a few hundred).
    """
    if _is_nonpositive_int(b1) or _is_nonpositive_int(b2):
        raise DomainError(
            f"1F2 lower parameters must not be non-positive integers: "
            f"({b1}, {b2})")
    z = complex(z)
    total, peak = _sum_double(b1, b2, z)
    if abs(total) == 0.0 or peak / abs(total) > _ESCALATE_LOSS:
        return _sum_decimal(b1, b2, z)
    return total
