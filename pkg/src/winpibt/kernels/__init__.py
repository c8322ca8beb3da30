"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import time (see :mod:`winpibt._accel`).
Both implementations stay importable as ``kernels.loops`` and
``kernels.vector`` so they can be cross-checked and benchmarked.
"""

from .. import _accel
from . import _loops as loops
from . import _vector as vector

BACKEND = _accel.BACKEND
_impl = loops if _accel.USE_NUMBA else vector

bfs = _impl.bfs
all_pairs_to = _impl.all_pairs_to
build_constraints = _impl.build_constraints
space_time_search = _impl.space_time_search
disentangled_violation = _impl.disentangled_violation
first_conflict = _impl.first_conflict

__all__ = [
    "BACKEND",
    "loops",
    "vector",
    "bfs",
    "all_pairs_to",
    "build_constraints",
    "space_time_search",
    "disentangled_violation",
    "first_conflict",
]
