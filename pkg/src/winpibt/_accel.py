"""Backend selection for the numeric kernels.

Set ``WINPIBT_DISABLE_NUMBA=1`` before importing the package to force the
pure-numpy code path (useful for debugging and for platforms without numba).
"""

import os

_FLAG = "WINPIBT_DISABLE_NUMBA"


def _env_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is an optional speedup
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _env_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` in nopython mode when numba is available.

    Without numba the function is returned unchanged so the loop-based
    implementations can still be imported (and unit tested on tiny inputs).
    """
    if _numba is None:
        return func
    return _numba.njit(cache=True, nogil=True)(func)
