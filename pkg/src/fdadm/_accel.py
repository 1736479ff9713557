"""
JIT switch for the numeric kernels.

Set ``FDADM_DISABLE_NUMBA=1`` to run the pure-numpy implementations in
:mod:`fdadm.kernels` instead of the numba-compiled loops. The flag is read
once at import time.
"""

import os

_FLAG = os.environ.get("FDADM_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError
    from numba import config as _config
    from numba import njit, prange

    # the bundled TBB is often too old; pick a layer that never warns
    if _config.THREADING_LAYER == "default" and "NUMBA_THREADING_LAYER" not in os.environ:
        _config.THREADING_LAYER = "workqueue"
    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper

    def prange(*args):
        return range(*args)


__all__ = ["NUMBA_ENABLED", "njit", "prange"]
