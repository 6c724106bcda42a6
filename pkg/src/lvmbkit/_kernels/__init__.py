"""Integer elimination kernels.

The compiled extension is used when it was built; otherwise the pure-Python
twin is imported.  Set ``LVMBKIT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("LVMBKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

int_rank = _impl.int_rank
int_det = _impl.int_det
int_hnf = _impl.int_hnf

__all__ = ["BACKEND", "int_rank", "int_det", "int_hnf"]
