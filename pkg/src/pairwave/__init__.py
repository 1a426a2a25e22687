"""pairwave: time-dependent pair excitation in a dilute Bose gas.

Library + CLI for the pair-excitation kernel of a zero-temperature Bose
gas in units hbar = 2m = 1: exact Fourier-space evolution, steady-state
kernel, large-time stationary-phase asymptotics with Lommel connection
formulas, Thomas-Fermi trap extension, and propagator pole analysis.
"""
from ._kernels import BACKEND as KERNEL_BACKEND
from .asymptotics import (PhaseData, Region, classify_region, i_minus_sum,
                          i_plus, lambda_asymptotic,
                          lambda_asymptotic_complex, lambda_small_r,
                          remainder_bound, stationary_point)
from .homogeneous import (GasParams, InitialData, ScaledPoint, SpectralState,
                          g0_hat, g0_quadrature, kernel_r, khat_exact,
                          lambda_oracle, lambda_oracle_complex, omega,
                          p0_hat, riccati_numeric, scaled_point, steady_g0_r)
from .poles import PoleRecord, find_poles, pole_estimate, u_eval
from .trap import (TFSolution, TrapModel, constant_trap, exterior_kernel,
                   khat_slow, lambda_slow, local_scaling, quadratic_trap,
                   solve_tf)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND", "__version__",
    "GasParams", "InitialData", "ScaledPoint", "SpectralState",
    "g0_hat", "omega", "p0_hat", "khat_exact", "riccati_numeric",
    "steady_g0_r", "g0_quadrature", "lambda_oracle",
    "lambda_oracle_complex", "kernel_r", "scaled_point",
    "PhaseData", "Region", "stationary_point", "classify_region",
    "i_minus_sum", "i_plus", "remainder_bound", "lambda_asymptotic",
    "lambda_asymptotic_complex", "lambda_small_r",
    "PoleRecord", "u_eval", "find_poles", "pole_estimate",
    "TrapModel", "TFSolution", "constant_trap", "quadratic_trap", "solve_tf",
    "local_scaling", "khat_slow", "exterior_kernel", "lambda_slow",
]
