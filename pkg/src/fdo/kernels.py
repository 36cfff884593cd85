"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when
``FDO_PURE_PYTHON=1`` is set, the numpy fallback is used. Both produce
identical results.
"""

from __future__ import annotations

import importlib
import os

from . import _pykernels

KERNELS = ("first_fit", "perm_diff", "apply_swaps", "subset_sum_counts", "star_discrepancy_grid")


def load_backend(name: str):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("fdo._kernels")
    raise ValueError(f"unknown backend {name!r}")


def _select():
    if os.environ.get("FDO_PURE_PYTHON", "") not in ("", "0"):
        return "python", _pykernels
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", _pykernels


BACKEND, _impl = _select()

first_fit = _impl.first_fit
perm_diff = _impl.perm_diff
apply_swaps = _impl.apply_swaps
subset_sum_counts = _impl.subset_sum_counts
star_discrepancy_grid = _impl.star_discrepancy_grid
