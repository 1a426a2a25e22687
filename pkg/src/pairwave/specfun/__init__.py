"""Complex special functions used by the closed forms and asymptotics."""
from .bessel import (bessel_third, besselj13, besselk13, bessely13,
                     hankel1_13)
from .hyp import hyp1f2
from .lommel import (ORDER_00, ORDER_04, ORDER_13, LommelOrder,
                     lommel_S, lommel_modified_identities, lommel_s_asym,
                     lommel_s_series, steady_imag_diff)
from .polygamma import polygamma, psi2, psi3

__all__ = [
    "bessel_third", "besselj13", "bessely13", "hankel1_13", "besselk13",
    "hyp1f2",
    "LommelOrder", "ORDER_00", "ORDER_13", "ORDER_04",
    "lommel_S", "lommel_s_series", "lommel_s_asym",
    "lommel_modified_identities", "steady_imag_diff",
    "polygamma", "psi2", "psi3",
]
