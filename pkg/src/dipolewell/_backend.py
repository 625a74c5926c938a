"""Kernel backend selection, fixed at import time.

The compiled extension is preferred when it imported cleanly; setting
DIPOLEWELL_BACKEND=python in the environment forces the pure-Python
fallback (useful for benchmarking and debugging).
"""

import os

from dipolewell import _kernels_py

if os.environ.get("DIPOLEWELL_BACKEND", "").lower() == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from dipolewell import _kernels_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

kummer_series = _impl.kummer_series
whittaker_sweep = _impl.whittaker_sweep
radial_sweep = _impl.radial_sweep


def backend_name():
    """Name of the kernel backend selected at import: 'compiled' or 'python'."""
    return BACKEND
