"""Numerical kernel backend selection.

The compiled Cython module is preferred when present; the pure-NumPy module
is the fallback.  Set WEYLEST_BACKEND=python to force the fallback or
WEYLEST_BACKEND=c to require the compiled module (ImportError if missing).
"""

import os

from . import kernels_py

_requested = os.environ.get("WEYLEST_BACKEND", "").strip().lower()

if _requested in ("python", "py", "numpy"):
    kernels = kernels_py
elif _requested in ("c", "cython", "compiled"):
    from . import _kernels as kernels
elif _requested:
    raise ImportError(f"unknown WEYLEST_BACKEND value: {_requested!r}")
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = kernels_py


def backend_name() -> str:
    """Name of the selected kernel backend ('cython' or 'python')."""
    return kernels.NAME
