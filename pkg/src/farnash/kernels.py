"""Backend selection for the support-enumeration kernels.

The compiled extension is preferred; set ``FARNASH_PURE_PYTHON=1`` to force
the pure-Python fallback (used by the benchmark and the backend-parity tests).
"""

import os

from . import _pykernels

if os.environ.get("FARNASH_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

solve_indifference = _impl.solve_indifference
payoff_numerators = _impl.payoff_numerators
