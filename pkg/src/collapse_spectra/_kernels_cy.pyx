# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the tridiagonal eigensolver hot loops.

Contract-identical to ``_kernels_py``; see that module for the reference
semantics.  The Sturm count and the pivoted tridiagonal factor/solve are
the only parts of the eigensolver that dominate runtime, so only they
live here.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

IMPLEMENTATION = "cython"


cdef long _count_scalar(const double[::1] d, const double[::1] e2,
                        double x, double pivmin) noexcept nogil:
    cdef Py_ssize_t i, n = d.shape[0]
    cdef double q = d[0] - x
    cdef long count = 0
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def sturm_count(const double[::1] d, const double[::1] e2, double x,
                double pivmin):
    """Number of eigenvalues strictly below ``x``."""
    cdef long c
    with nogil:
        c = _count_scalar(d, e2, x, pivmin)
    return c


def sturm_counts(const double[::1] d, const double[::1] e2, xs,
                 double pivmin):
    """Sturm counts at several shifts at once."""
    cdef double[::1] shifts = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.int64_t[::1] out = np.empty(shifts.shape[0], dtype=np.int64)
    cdef Py_ssize_t j
    with nogil:
        for j in range(shifts.shape[0]):
            out[j] = _count_scalar(d, e2, shifts[j], pivmin)
    return np.asarray(out)


def gtt_factor(const double[::1] d, const double[::1] e, double sigma):
    """LU-factor ``T - sigma*I`` with partial pivoting (gttrf layout)."""
    cdef Py_ssize_t i, n = d.shape[0]
    dd_arr = np.empty(n)
    dl_arr = np.array(e, dtype=np.float64, copy=True)
    du_arr = np.array(e, dtype=np.float64, copy=True)
    du2_arr = np.zeros(max(n - 2, 0))
    piv_arr = np.zeros(n, dtype=np.int64)
    cdef double[::1] dd = dd_arr
    cdef double[::1] dl = dl_arr
    cdef double[::1] du = du_arr
    cdef double[::1] du2 = du2_arr
    cdef cnp.int64_t[::1] piv = piv_arr
    cdef double fac, tmp
    with nogil:
        for i in range(n):
            dd[i] = d[i] - sigma
        for i in range(n - 1):
            if fabs(dd[i]) >= fabs(dl[i]):
                if dd[i] == 0.0:
                    dd[i] = 1e-300
                fac = dl[i] / dd[i]
                dl[i] = fac
                dd[i + 1] -= fac * du[i]
            else:
                fac = dd[i] / dl[i]
                dd[i] = dl[i]
                dl[i] = fac
                tmp = dd[i + 1]
                dd[i + 1] = du[i] - fac * tmp
                if i < n - 2:
                    du2[i] = du[i + 1]
                    du[i + 1] = -fac * du[i + 1]
                du[i] = tmp
                piv[i] = 1
        if dd[n - 1] == 0.0:
            dd[n - 1] = 1e-300
    return dl_arr, dd_arr, du_arr, du2_arr, piv_arr


def gtt_solve(const double[::1] dl, const double[::1] dd,
              const double[::1] du, const double[::1] du2,
              const cnp.int64_t[::1] piv, b):
    """Solve with a factorization from :func:`gtt_factor` (new array)."""
    cdef Py_ssize_t i, n = dd.shape[0]
    x_arr = np.array(b, dtype=np.float64, copy=True)
    cdef double[::1] x = x_arr
    cdef double tmp
    with nogil:
        for i in range(n - 1):
            if piv[i]:
                tmp = x[i]
                x[i] = x[i + 1]
                x[i + 1] = tmp
            x[i + 1] -= dl[i] * x[i]
        x[n - 1] /= dd[n - 1]
        if n > 1:
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2]
        for i in range(n - 3, -1, -1):
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i]
    return x_arr
