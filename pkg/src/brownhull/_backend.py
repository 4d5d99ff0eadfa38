"""Kernel-lane selection.

``BROWNHULL_BACKEND`` picks the implementation of the hot kernels:
``numba`` (jitted, the default when numba imports), ``numpy`` (pure
NumPy/Python fallback) or ``auto``.  Both lanes expose identical
functions and produce identical numbers; the bitwise determinism
contract holds within whichever lane is active.
"""

from __future__ import annotations

import os

_requested = os.environ.get("BROWNHULL_BACKEND", "auto").strip().lower() or "auto"

if _requested == "auto":
    try:
        from . import _kernels_numba as kernels
    except ImportError:
        from . import _kernels_numpy as kernels
elif _requested == "numba":
    from . import _kernels_numba as kernels
elif _requested == "numpy":
    from . import _kernels_numpy as kernels
else:
    raise RuntimeError(
        f"BROWNHULL_BACKEND must be 'auto', 'numba' or 'numpy', got {_requested!r}"
    )


def backend_name() -> str:
    """Name of the active kernel lane."""
    return kernels.NAME
