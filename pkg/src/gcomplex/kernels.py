"""Kernel selection.

The compiled extension is used when it imports; setting ``GCOMPLEX_PURE=1``
forces the pure-Python reference implementations.
"""

from __future__ import annotations

import os

from gcomplex import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("GCOMPLEX_PURE", "") not in ("1", "true", "yes"):
    try:
        from gcomplex import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels

INFINITE = -1

triangle_count = _impl.triangle_count
is_connected = _impl.is_connected
bareiss_det = _impl.bareiss_det
canonical_labeling = _impl.canonical_labeling
istar = _impl.istar
istar_batch = _impl.istar_batch
sync_histogram = _impl.sync_histogram


def enumerate_rows(n, m, degree=-1, connected=True):
    return list(_impl.enumerate_rows(n, m, degree, connected))


__all__ = [
    "BACKEND",
    "INFINITE",
    "bareiss_det",
    "canonical_labeling",
    "enumerate_rows",
    "is_connected",
    "istar",
    "istar_batch",
    "sync_histogram",
    "triangle_count",
]
