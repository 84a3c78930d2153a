"""Numba switch.

Set ``CHARPROD_NUMBA=0`` in the environment before importing ``charprod`` to
run every kernel through its pure-numpy implementation instead.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("CHARPROD_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")


def njit(func):
    """Compile ``func`` with numba (cached, nopython) when it is available."""
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)
