"""Numeric kernels for edge lengths and rigidity rows.

Two interchangeable backends: a compiled extension (built at install time
when Cython is available) and a pure-numpy fallback. Selection happens once
at import; set PERIFRAME_NO_EXT=1 to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _slowkern

_impl = _slowkern
backend_name = "python"

if not os.environ.get("PERIFRAME_NO_EXT"):
    try:
        from . import _fastkern  # type: ignore[attr-defined]

        _impl = _fastkern
        backend_name = "compiled"
    except ImportError:
        pass


def _prep(T, omega, tails, heads, labels):
    T = np.ascontiguousarray(T, dtype=np.float64)
    omega = np.ascontiguousarray(omega, dtype=np.float64)
    tails = np.ascontiguousarray(tails, dtype=np.int64)
    heads = np.ascontiguousarray(heads, dtype=np.int64)
    labels = np.ascontiguousarray(labels, dtype=np.float64)
    return T, omega, tails, heads, labels


def edge_lengths_sq(T, omega, tails, heads, labels) -> np.ndarray:
    """Squared bar lengths, one per edge.

    T is (n, d) with row 0 the base vertex (all zeros under the standard
    normalization), omega the (d, d) symmetric Gram matrix, labels (m, d).
    """
    return _impl.edge_lengths_sq(*_prep(T, omega, tails, heads, labels))


def rigidity_rows(T, omega, tails, heads, labels) -> np.ndarray:
    """Jacobian of edge_lengths_sq in the packed parameter vector.

    Column order: t_1..t_{n-1} coordinates row-major, then the upper
    triangle of omega row-major. Loops contribute zero to every t column.
    """
    return _impl.rigidity_rows(*_prep(T, omega, tails, heads, labels))
