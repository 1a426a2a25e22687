"""Hot-kernel backend selection.

Prefers the compiled extension (pairwave._core, built via
``python setup.py build_ext --inplace``); falls back to the numpy
implementation.  Set PAIRWAVE_PURE=1 to force the numpy backend.
"""
import os

if os.environ.get("PAIRWAVE_PURE", "") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
deviation_integrand = _impl.deviation_integrand
mode_integrand = _impl.mode_integrand
steady_inversion_integrand = _impl.steady_inversion_integrand
