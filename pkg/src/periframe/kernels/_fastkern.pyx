# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend: tight loops over edges, dimension capped at 4."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF MAXD = 4


def edge_lengths_sq(const double[:, ::1] T, const double[:, ::1] omega,
                    const cnp.int64_t[::1] tails, const cnp.int64_t[::1] heads,
                    const double[:, ::1] labels):
    cdef Py_ssize_t m = labels.shape[0]
    cdef Py_ssize_t d = labels.shape[1]
    if d > MAXD:
        raise ValueError("dimension exceeds compiled limit")
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef double v[MAXD]
    cdef double s, row
    cdef Py_ssize_t e, a, b, i, j
    for e in range(m):
        i = tails[e]
        j = heads[e]
        for a in range(d):
            v[a] = T[j, a] + labels[e, a] - T[i, a]
        s = 0.0
        for a in range(d):
            row = 0.0
            for b in range(d):
                row += omega[a, b] * v[b]
            s += v[a] * row
        o[e] = s
    return out


def rigidity_rows(const double[:, ::1] T, const double[:, ::1] omega,
                  const cnp.int64_t[::1] tails, const cnp.int64_t[::1] heads,
                  const double[:, ::1] labels):
    cdef Py_ssize_t m = labels.shape[0]
    cdef Py_ssize_t d = labels.shape[1]
    cdef Py_ssize_t n = T.shape[0]
    if d > MAXD:
        raise ValueError("dimension exceeds compiled limit")
    cdef Py_ssize_t ncols = d * (n - 1) + d * (d + 1) // 2
    R = np.zeros((m, ncols), dtype=np.float64)
    cdef double[:, ::1] r = R
    cdef double v[MAXD]
    cdef double w[MAXD]
    cdef double s
    cdef Py_ssize_t e, a, b, i, j, base, col
    for e in range(m):
        i = tails[e]
        j = heads[e]
        for a in range(d):
            v[a] = T[j, a] + labels[e, a] - T[i, a]
        for a in range(d):
            s = 0.0
            for b in range(d):
                s += omega[a, b] * v[b]
            w[a] = 2.0 * s
        if j > 0:
            base = (j - 1) * d
            for a in range(d):
                r[e, base + a] += w[a]
        if i > 0:
            base = (i - 1) * d
            for a in range(d):
                r[e, base + a] -= w[a]
        col = d * (n - 1)
        for a in range(d):
            for b in range(a, d):
                if a == b:
                    r[e, col] = v[a] * v[a]
                else:
                    r[e, col] = 2.0 * v[a] * v[b]
                col += 1
    return R
