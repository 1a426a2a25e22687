"""Second and third derivatives of the digamma function for complex argument.

Evaluation: recur the argument up until its real part is large, then apply
the Bernoulli asymptotic series.  Ten significant digits or better for
|z| <= 50 away from the poles at the non-positive integers.
"""
import numpy as np

from ..errors import DomainError

# B_2, B_4, ..., B_24
_BERNOULLI = [
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
    854513.0 / 138, -236364091.0 / 2730,
]

_SHIFT_TO = 26.0


def _near_pole(z):
    return abs(z.imag) < 1e-12 and z.real < 0.5 and \
        abs(z.real - round(z.real)) < 1e-12


def _psi2_asym(w):
    # psi''(w) = -1/w^2 - 1/w^3 - sum B_2k (2k+1) / w^(2k+2)
    w2 = w * w
    total = -1.0 / w2 - 1.0 / (w2 * w)
    wp = w2 * w2
    for k, b in enumerate(_BERNOULLI, start=1):
        term = -b * (2 * k + 1) / wp
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
        wp *= w2
    return total


def _psi3_asym(w):
    # psi'''(w) = 2/w^3 + 3/w^4 + sum B_2k (2k+1)(2k+2) / w^(2k+3)
    w2 = w * w
    w3 = w2 * w
    total = 2.0 / w3 + 3.0 / (w2 * w2)
    wp = w3 * w2
    for k, b in enumerate(_BERNOULLI, start=1):
        term = b * (2 * k + 1) * (2 * k + 2) / wp
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
        wp *= w2
    return total


def polygamma(n, z):
    """psi^(n)(z) for n in {2, 3} and complex z off the poles."""
    if n not in (2, 3):
        raise DomainError(f"polygamma order must be 2 or 3, got {n}")
    z = complex(z)
    if _near_pole(z):
        raise DomainError(f"polygamma argument {z} is at a pole of psi")
    shift = max(0, int(np.ceil(_SHIFT_TO - z.real)))
    w = z + shift
    if n == 2:
        total = _psi2_asym(w)
        # psi''(z) = psi''(z+N) - 2 sum_{j<N} (z+j)^-3
        for j in range(shift):
            zj = z + j
            if _near_pole(zj):
                raise DomainError(f"polygamma argument {z} is at a pole of psi")
            total -= 2.0 / zj ** 3
    else:
        total = _psi3_asym(w)
        for j in range(shift):
            zj = z + j
            if _near_pole(zj):
                raise DomainError(f"polygamma argument {z} is at a pole of psi")
            total += 6.0 / zj ** 4
    return total


def psi2(z):
    """psi''(z); equals -2*zeta(3) at z=1."""
    return polygamma(2, z)


def psi3(z):
    """psi'''(z); equals pi^4/15 at z=1."""
    return polygamma(3, z)
