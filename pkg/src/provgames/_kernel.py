"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``PROVGAMES_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _solve_py

BACKEND = "python"
_ext = None
if not os.environ.get("PROVGAMES_PURE_PYTHON"):
    try:
        from . import _solve_ext as _ext

        BACKEND = "cython"
    except ImportError:
        _ext = None


def available_backends():
    return ("cython", "python") if _ext is not None else ("python",)


def solve_csr(n, succ_off, pred_off, pred_idx, backend=None):
    """Run the retrograde kernel; returns ``(status, length)`` as lists of int."""
    backend = backend or BACKEND
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernel is not available")
        status, length = _ext.solve_csr(
            n,
            np.ascontiguousarray(succ_off, dtype=np.int64),
            np.ascontiguousarray(pred_off, dtype=np.int64),
            np.ascontiguousarray(pred_idx, dtype=np.int64),
        )
        return status.tolist(), length.tolist()
    if backend != "python":
        raise ValueError(f"unknown kernel backend {backend!r}")
    return _solve_py.solve_csr(n, list(succ_off), list(pred_off), list(pred_idx))
