"""Select the compiled kernels when available, else the numpy fallback.

Set NEWTON_ZETA_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from . import _kernels_py

if os.environ.get("NEWTON_ZETA_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

box_residues = _impl.box_residues
torus_scan = _impl.torus_scan


def max_workers() -> int:
    """Worker cap from NEWTON_ZETA_THREADS (default: CPU count)."""
    raw = os.environ.get("NEWTON_ZETA_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def parallel_map(fn, items) -> list:
    """fn over items on up to max_workers() threads; results keep the input order."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
