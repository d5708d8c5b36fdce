"""Pure-numpy reference backend for the hot kernels."""

from __future__ import annotations

import numpy as np


def edge_lengths_sq(T, omega, tails, heads, labels):
    V = T[heads] + labels - T[tails]
    return np.einsum("ea,ab,eb->e", V, omega, V)


def rigidity_rows(T, omega, tails, heads, labels):
    m, d = labels.shape
    n = T.shape[0]
    ncols = d * (n - 1) + d * (d + 1) // 2
    V = T[heads] + labels - T[tails]
    W = 2.0 * (V @ omega)
    R = np.zeros((m, ncols), dtype=np.float64)
    rows = np.arange(m)
    hmask = heads > 0
    tmask = tails > 0
    for a in range(d):
        # += / -= rather than assignment so a loop edge cancels itself
        np.add.at(R, (rows[hmask], (heads[hmask] - 1) * d + a), W[hmask, a])
        np.add.at(R, (rows[tmask], (tails[tmask] - 1) * d + a), -W[tmask, a])
    col = d * (n - 1)
    for a in range(d):
        for b in range(a, d):
            if a == b:
                R[:, col] = V[:, a] * V[:, a]
            else:
                R[:, col] = 2.0 * V[:, a] * V[:, b]
            col += 1
    return R
