"""Numba switch. Set ``GRAPHQFI_NUMBA=0`` to force the pure-numpy kernels."""

import os

_FLAG = os.environ.get("GRAPHQFI_NUMBA", "1").strip().lower()

try:
    if _FLAG in ("0", "false", "no", "off"):
        raise ImportError("numba disabled by GRAPHQFI_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
