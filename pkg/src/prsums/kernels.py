"""Kernel backend selection.

The compiled extension is preferred; the pure-Python twin is the fallback
when the build is unavailable (or when PRSUMS_KERNELS=python forces it,
which the benchmark and the backend-parity tests use).
"""

from __future__ import annotations

import os
import warnings

from . import _kernels_py

_forced = os.environ.get("PRSUMS_KERNELS", "").strip().lower()

if _forced in ("python", "py"):
    _impl = _kernels_py
elif _forced in ("cython", "c", ""):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced:
            raise
        warnings.warn(
            "prsums._kernels extension not built; falling back to the "
            "pure-Python kernels (expect large slowdowns on scans)",
            RuntimeWarning,
            stacklevel=2,
        )
        _impl = _kernels_py
else:
    raise RuntimeError(f"PRSUMS_KERNELS must be 'cython' or 'python', got {_forced!r}")


def backend() -> str:
    """Name of the active kernel backend: 'cython' or 'python'."""
    return _impl.BACKEND


sum_roots = _impl.sum_roots
prefix_sums = _impl.prefix_sums
avg_inner_rows = _impl.avg_inner_rows
interval_inner_rows = _impl.interval_inner_rows
inner_matrix = _impl.inner_matrix
mordell_scan_g = _impl.mordell_scan_g
count_solutions_range = _impl.count_solutions_range
