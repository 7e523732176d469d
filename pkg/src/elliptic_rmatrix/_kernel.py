"""Backend selection for the theta series kernel.

The compiled extension is used when it imports; setting the environment
variable ``ELLIPTIC_RMATRIX_PURE=1`` forces the pure-Python fallback.
"""

import os

from . import _theta_py

BACKEND = "python"
theta_series = _theta_py.theta_series

if not os.environ.get("ELLIPTIC_RMATRIX_PURE"):
    try:
        from ._theta_ext import theta_series  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

__all__ = ["BACKEND", "theta_series"]
