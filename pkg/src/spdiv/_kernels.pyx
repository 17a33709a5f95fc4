# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled solver kernels.

Gaussian elimination with partial pivoting against the all-ones right-hand
side, plus a batched variant that scores many index subsets of one ground
similarity matrix.  Contract mirrors ``spdiv._kernels_py``.
"""

from libc.math cimport fabs, INFINITY, NAN

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


cdef double _eliminate(const double[:, ::1] zorig, double[:, ::1] work,
                       double[::1] rhs, double[::1] w, double* residual) noexcept nogil:
    """Solve work w = 1 in place; return min |pivot| and write the residual
    of the solution against zorig."""
    cdef Py_ssize_t m = work.shape[0]
    cdef Py_ssize_t col, i, j, piv
    cdef double best, mag, factor, acc, min_pivot, pivot
    min_pivot = INFINITY

    for i in range(m):
        rhs[i] = 1.0

    for col in range(m):
        piv = col
        best = fabs(work[col, col])
        for i in range(col + 1, m):
            mag = fabs(work[i, col])
            if mag > best:
                best = mag
                piv = i
        if piv != col:
            for j in range(m):
                acc = work[col, j]
                work[col, j] = work[piv, j]
                work[piv, j] = acc
            acc = rhs[col]
            rhs[col] = rhs[piv]
            rhs[piv] = acc
        pivot = work[col, col]
        if fabs(pivot) < min_pivot:
            min_pivot = fabs(pivot)
        if pivot == 0.0:
            continue
        for i in range(col + 1, m):
            factor = work[i, col] / pivot
            for j in range(col + 1, m):
                work[i, j] -= factor * work[col, j]
            rhs[i] -= factor * rhs[col]

    for i in range(m - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, m):
            acc -= work[i, j] * w[j]
        pivot = work[i, i]
        if pivot == 0.0:
            w[i] = NAN
        else:
            w[i] = acc / pivot

    cdef double res = 0.0
    for i in range(m):
        acc = -1.0
        for j in range(m):
            acc += zorig[i, j] * w[j]
        if acc != acc:  # NaN from a dead pivot
            res = INFINITY
        elif fabs(acc) > res:
            res = fabs(acc)
    residual[0] = res
    return min_pivot


def solve_unit(z):
    """Solve z w = 1 for one m-by-m matrix.

    Returns (w, residual_inf, min_pivot); z is not modified.
    """
    cdef const double[:, ::1] zorig = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t m = zorig.shape[0]
    if zorig.shape[1] != m:
        raise ValueError("matrix must be square")
    work_arr = np.array(zorig, dtype=np.float64, copy=True)
    w_arr = np.empty(m, dtype=np.float64)
    rhs_arr = np.empty(m, dtype=np.float64)
    cdef double[:, ::1] work = work_arr
    cdef double[::1] w = w_arr
    cdef double[::1] rhs = rhs_arr
    cdef double residual = 0.0
    cdef double min_pivot
    with nogil:
        min_pivot = _eliminate(zorig, work, rhs, w, &residual)
    return w_arr, residual, min_pivot


def score_subsets(sim, subsets):
    """Diversity values for a batch of index subsets of a ground similarity matrix.

    sim is (n, n); subsets is (B, k).  Returns (values, min_pivots,
    residuals), one entry per subset; values are NaN where elimination hit a
    zero pivot.
    """
    cdef const double[:, ::1] s = np.ascontiguousarray(sim, dtype=np.float64)
    cdef const long long[:, ::1] idx = np.ascontiguousarray(subsets, dtype=np.int64)
    cdef Py_ssize_t b_count = idx.shape[0]
    cdef Py_ssize_t k = idx.shape[1]
    cdef Py_ssize_t n = s.shape[0]
    if k == 0:
        raise ValueError("subsets must have k >= 1 columns")

    values_arr = np.empty(b_count, dtype=np.float64)
    pivots_arr = np.empty(b_count, dtype=np.float64)
    residuals_arr = np.empty(b_count, dtype=np.float64)
    gathered_arr = np.empty((k, k), dtype=np.float64)
    work_arr = np.empty((k, k), dtype=np.float64)
    w_arr = np.empty(k, dtype=np.float64)
    rhs_arr = np.empty(k, dtype=np.float64)

    cdef double[::1] values = values_arr
    cdef double[::1] pivots = pivots_arr
    cdef double[::1] residuals = residuals_arr
    cdef double[:, ::1] gathered = gathered_arr
    cdef double[:, ::1] work = work_arr
    cdef double[::1] w = w_arr
    cdef double[::1] rhs = rhs_arr

    cdef Py_ssize_t b, i, j
    cdef long long u, v
    cdef double residual, total

    with nogil:
        for b in range(b_count):
            for i in range(k):
                u = idx[b, i]
                if u < 0 or u >= n:
                    with gil:
                        raise ValueError("subset index out of range")
                for j in range(k):
                    v = idx[b, j]
                    gathered[i, j] = s[u, v]
                    work[i, j] = gathered[i, j]
            pivots[b] = _eliminate(gathered, work, rhs, w, &residual)
            residuals[b] = residual
            total = 0.0
            for i in range(k):
                total += w[i]
            values[b] = total
    return values_arr, pivots_arr, residuals_arr
