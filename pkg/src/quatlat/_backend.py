"""Kernel backend selection.

Imports the compiled extension when present, falling back to the pure-Python
kernels.  Set QUATLAT_PURE=1 to force the fallback (useful for benchmarking
and for debugging the compiled code against the reference).
"""

import os

from . import _kernels_py

if os.environ.get("QUATLAT_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # compiled extension
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
poly_mulmod = _impl.poly_mulmod
hnf_insert = _impl.hnf_insert
xgcd = _kernels_py.xgcd
enum_candidates = _impl.enum_candidates
matmul_mod = _impl.matmul_mod
