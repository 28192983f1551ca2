"""Backend selection for the batch kernel.

The compiled extension is used when it imports; otherwise the numpy
version. Set ``ENTROPIC_LG_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
c_alpha_batch = _kernels_py.c_alpha_batch

if os.environ.get("ENTROPIC_LG_BACKEND", "").lower() not in ("python", "py", "numpy"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        c_alpha_batch = _compiled.c_alpha_batch


def backends() -> dict:
    """All importable implementations, keyed by name."""
    out = {"python": _kernels_py.c_alpha_batch}
    try:
        from . import _kernels as _compiled
    except ImportError:
        return out
    out["cython"] = _compiled.c_alpha_batch
    return out
