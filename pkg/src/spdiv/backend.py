"""Selects the solver kernels at import time.

The compiled extension is preferred when it imported cleanly; otherwise the
NumPy implementation is used.  Set SPDIV_BACKEND=python or
SPDIV_BACKEND=compiled to force a choice (the latter raises if the extension
is unavailable).
"""

import os

from . import _kernels_py

_forced = os.environ.get("SPDIV_BACKEND")

if _forced not in (None, "", "python", "compiled"):
    raise ImportError(f"SPDIV_BACKEND must be 'python' or 'compiled', got {_forced!r}")

if _forced == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _kernels_py

solve_unit = _impl.solve_unit
score_subsets = _impl.score_subsets


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _impl.BACKEND_NAME
