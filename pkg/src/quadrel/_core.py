"""Import-time selection of the elimination kernels.

The compiled module is used when it was built; otherwise the numpy versions
are used.  Setting ``QUADREL_PURE=1`` forces the numpy versions.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QUADREL_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "numpy"

rref_gf = _impl.rref_gf
rref_f2 = _impl.rref_f2
matmul_gf = _impl.matmul_gf
