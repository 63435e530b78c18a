"""Backend selection for the hot kernels.

Kernels are written twice: a numba @njit version and a pure-numpy fallback.
The env flag HEPTA_NO_NUMBA=1 forces the fallback; it is also used when
numba is not installed.  `benchmarks/bench_backends.py` compares the two.
"""

import os

_flag = os.environ.get("HEPTA_NO_NUMBA", "").strip().lower()
_disabled = _flag in ("1", "true", "yes", "on")

try:
    from numba import njit  # noqa: F401
    _have_numba = True
except ImportError:
    njit = None
    _have_numba = False

USE_NUMBA = _have_numba and not _disabled


def jit(func):
    """Compile with numba when enabled, otherwise return func unchanged."""
    if USE_NUMBA:
        return njit(cache=True)(func)
    return func


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
