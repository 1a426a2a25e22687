"""Pure-numpy implementations of the hot integrand kernels.

Mirrors pairwave._core (the optional Cython extension) exactly; the two are
interchangeable and benchmarked against each other in benchmarks/.
"""
import numpy as np

BACKEND = "numpy"


def deviation_integrand(s, r_tilde, tau, angle):
    """Integrand of the pair-kernel deviation integral on a rotated ray.

    Evaluates, at eta = s*exp(-i*angle),

        sinh(2 eta)^2 * sin(r~ sinh eta) / (exp(4 eta + i tau sinh 2 eta) - 1)

    times the ray Jacobian exp(-i*angle).  The sine is split into the two
    exponentials and each is combined with the denominator's exponential so
    no intermediate overflows for large r~ or tau.
    """
    s = np.asarray(s, dtype=float)
    eta = s * np.exp(-1j * angle)
    z = 4.0 * eta + 1j * tau * np.sinh(2.0 * eta)
    w = r_tilde * np.sinh(eta)
    num = np.exp(1j * w - z) - np.exp(-1j * w - z)
    den = -np.expm1(-z)
    out = np.empty_like(eta)
    small = np.abs(z) < 1e-250
    np.divide(num, 2j * den, out=out, where=~small)
    out[small] = 0.0
    out *= np.sinh(2.0 * eta) ** 2
    out *= np.exp(-1j * angle)
    return out


def mode_integrand(s, l, r_tilde, tau, angle):
    """Single-mode integrand I_{l,+} on a rotated ray (with ray Jacobian).

    Evaluates (1/2i) sinh(2 eta)^2 exp(-4 l eta) exp(i(r~ sinh eta
    - l tau sinh 2 eta)) at eta = s*exp(-i*angle).
    """
    s = np.asarray(s, dtype=float)
    eta = s * np.exp(-1j * angle)
    phase = (-4.0 * l) * eta + 1j * (r_tilde * np.sinh(eta)
                                     - l * tau * np.sinh(2.0 * eta))
    return (np.sinh(2.0 * eta) ** 2 / 2j) * np.exp(phase) * np.exp(-1j * angle)


def steady_inversion_integrand(s, r, g, angle):
    """Integrand k*exp(i k r)*g0hat(k) on the upward ray k = s*exp(+i*angle).

    g0hat in the rationalized form -(g/2)/(k^2 + g/2 + k sqrt(k^2 + g)),
    analytic in the closed sector 0 <= arg k <= angle for angle < pi/2.
    """
    s = np.asarray(s, dtype=float)
    k = s * np.exp(1j * angle)
    g0 = -(0.5 * g) / (k * k + 0.5 * g + k * np.sqrt(k * k + g))
    return k * np.exp(1j * k * r) * g0 * np.exp(1j * angle)
