"""Kernel backend selection.

The compiled Cython module is used when importable; otherwise the pure
Python fallback is loaded. Set ``CHAOGUIDE_PURE_PYTHON=1`` to force the
fallback (benchmarks and backend-equivalence tests do this).
"""

import os

from . import _pykernels

LOZI = _pykernels.LOZI
HENON = _pykernels.HENON

if os.environ.get("CHAOGUIDE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernels
        BACKEND = "python"

iterate_orbit = _impl.iterate_orbit
lyapunov_jacobian = _impl.lyapunov_jacobian
