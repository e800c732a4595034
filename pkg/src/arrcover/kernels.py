"""Selects the compiled elimination kernels, falling back to pure Python.

Set ``ARRCOVER_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from arrcover import _purekernels as pure

BACKEND = "python"

if os.environ.get("ARRCOVER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from arrcover import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = pure
else:
    _impl = pure

gf2_rref = _impl.gf2_rref
gf2_rank = _impl.gf2_rank
fp_rref = _impl.fp_rref
fp_rank = _impl.fp_rank

__all__ = ["BACKEND", "gf2_rref", "gf2_rank", "fp_rref", "fp_rank", "pure"]
