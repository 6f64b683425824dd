"""Kernel backend selection.

Imports the compiled extension when present, otherwise the NumPy fallback.
Set QMCLAB_PURE_PYTHON=1 to force the fallback (used by the kernel
benchmark and for debugging).
"""
import os

if os.environ.get("QMCLAB_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
sobol_fill = _impl.sobol_fill
l2_star_sq = _impl.l2_star_sq
