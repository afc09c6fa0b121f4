"""Hot numerical kernels with a compiled core and a pure-NumPy fallback.

The compiled extension is used when it imported cleanly; set the
environment variable CGLMPLAB_PURE_PYTHON=1 before import to force the
NumPy implementation. Both expose the same two functions:

pure_state_table(ua, ub, phi, n_outcomes)
    Joint-probability table (2, 2, n, n) for a pure state with amplitude
    matrix phi measured in the bases given by the columns of ua[a], ub[b].

pure_state_value(M, ua, ub, phi, n_outcomes)
    The contraction sum(M * table) without materializing the table; this
    is the see-saw optimizer's objective.
"""

import os

from . import _pykernels

if os.environ.get("CGLMPLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

pure_state_table = _impl.pure_state_table
pure_state_value = _impl.pure_state_value

__all__ = ["BACKEND", "pure_state_table", "pure_state_value"]
