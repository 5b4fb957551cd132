"""Numba switch.

Set ``STEINSAHI_NUMBA=0`` in the environment to run every hot kernel through
its pure-numpy twin.  The flag is read once at import time.
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("STEINSAHI_NUMBA", "1").strip().lower()

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG not in ("0", "false", "no", "off")


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)

    def wrap(fn):
        return fn

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrap


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
