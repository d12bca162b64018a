"""Numba switch.

Set ``VSDO_NO_JIT=1`` to run every kernel as plain Python over numpy arrays.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

DISABLED = os.environ.get("VSDO_NO_JIT", "").strip().lower() not in ("", "0", "false", "no")
ENABLED = numba is not None and not DISABLED


def njit(fn):
    if not ENABLED:
        fn.py_func = fn
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
