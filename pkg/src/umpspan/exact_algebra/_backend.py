"""Pick the compiled kernels if available, else the pure-Python ones.

Set ``UMPSPAN_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
COMPILED_MAX_PRIME = 1 << 63

if os.environ.get("UMPSPAN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None
    else:
        BACKEND = "compiled"
else:
    _compiled = None


def rank_mod_p(rows: list[list[int]], ncols: int, p: int) -> int:
    if _compiled is not None and p < COMPILED_MAX_PRIME:
        return _compiled.rank_mod_p(rows, ncols, p)
    return _kernels_py.rank_mod_p(rows, ncols, p)


def trace_product_mod_p(mats, word, p: int) -> int:
    if _compiled is not None and p < COMPILED_MAX_PRIME:
        return _compiled.trace_product_mod_p(mats, list(word), p)
    return _kernels_py.trace_product_mod_p(mats, list(word), p)
