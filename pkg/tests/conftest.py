import math

import mpmath as mp
import pytest

from pairwave.homogeneous import GasParams

mp.mp.dps = 50


@pytest.fixture(scope="session")
def gas_unit():
    """Gas with coupling g = 16 pi a rho0 = 1."""
    return GasParams.from_coupling(1.0)


@pytest.fixture(scope="session")
def zeta3_series():
    """zeta(3) by direct series with an Euler-Maclaurin tail; independent
    of any polygamma machinery in the package."""
    n_terms = 20000
    partial = sum(1.0 / n ** 3 for n in range(1, n_terms + 1))
    n = float(n_terms)
    tail = 1.0 / (2.0 * n ** 2) + 1.0 / (2.0 * n ** 3) + 1.0 / (4.0 * n ** 4)
    return partial + tail


def lommel_ode_residual(order, z):
    """Normalized residual of z^2 S'' + z S' + (z^2 - nu^2) S - z^{mu+1}
    with derivatives from fourth-order central stencils.

    The residual is normalized by the largest term so the certification is
    meaningful for order (0,4), whose value near z = 0.1 is dominated by an
    O(1e6) homogeneous component (an absolute target there would demand
    more than double precision of the exact function).  For orders (0,0)
    and (0,1/3) the largest term is O(1) on the whole grid, so the
    normalized and raw residuals coincide in practice.
    """
    from pairwave.specfun import ORDER_04, lommel_S

    if order is ORDER_04 and z < 2.0:
        h = 2e-3 * z ** (5.0 / 3.0)
    else:
        h = 0.006 * min(1.0, z)
    f = lambda x: lommel_S(order, x)
    fm2, fm1, f0, fp1, fp2 = (f(z - 2 * h), f(z - h), f(z), f(z + h),
                              f(z + 2 * h))
    d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
    d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
    raw = abs(z * z * d2 + z * d1 + (z * z - order.nu ** 2) * f0 - z)
    scale = max(abs(z), abs(z * z * d2), abs(z * d1),
                abs((z * z - order.nu ** 2) * f0), 1.0)
    return raw / scale


def defining_g0_hat(k, g):
    """g0hat in the defining (non-rationalized) arrangement, used as the
    independent arithmetic oracle: -(k^2 + g/2 - k sqrt(k^2 + g))/(g/2)."""
    return -(k * k + 0.5 * g - k * math.sqrt(k * k + g)) / (0.5 * g)
