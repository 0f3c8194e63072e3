"""Kernel backend selection.

The compiled extension is preferred when importable; the NumPy fallback
has an identical interface.  Set OSCDETECT_PURE=1 to force the fallback
(useful for the backend benchmark and for debugging).
"""

import os

if os.environ.get("OSCDETECT_PURE"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
