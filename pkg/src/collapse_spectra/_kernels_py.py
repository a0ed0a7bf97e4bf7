"""Pure-Python kernels for the tridiagonal eigensolver hot loops.

Same contracts as the compiled twin in ``_kernels_cy.pyx``; this module is
the import-time fallback and the reference the extension is tested against.
The Sturm count is vectorized over shifts so that bisection on moderate
grids stays usable without the extension.
"""

import numpy as np

IMPLEMENTATION = "python"


def sturm_count(d, e2, x, pivmin):
    """Number of eigenvalues strictly below ``x``.

    ``d`` is the diagonal, ``e2`` the squared off-diagonal of a symmetric
    tridiagonal matrix.  Uses the classic LDL^T sign count with the
    ``pivmin`` guard against zero pivots.
    """
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def sturm_counts(d, e2, xs, pivmin):
    """Sturm counts at several shifts at once (vectorized over ``xs``)."""
    xs = np.asarray(xs, dtype=float)
    q = d[0] - xs
    np.copyto(q, -pivmin, where=np.abs(q) < pivmin)
    counts = (q < 0.0).astype(np.int64)
    for i in range(1, len(d)):
        q = d[i] - xs - e2[i - 1] / q
        np.copyto(q, -pivmin, where=np.abs(q) < pivmin)
        counts += q < 0.0
    return counts


def gtt_factor(d, e, sigma):
    """LU-factor ``T - sigma*I`` with partial pivoting.

    ``T`` is symmetric tridiagonal with diagonal ``d`` and off-diagonal
    ``e``.  Returns ``(dl, dd, du, du2, piv)`` in the usual gttrf layout:
    ``piv[i]`` is 1 where rows i, i+1 were swapped.
    """
    n = len(d)
    dd = d - sigma
    dl = np.array(e, dtype=float, copy=True)
    du = np.array(e, dtype=float, copy=True)
    du2 = np.zeros(max(n - 2, 0))
    piv = np.zeros(n, dtype=np.int64)
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
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
    return dl, dd, du, du2, piv


def gtt_solve(dl, dd, du, du2, piv, b):
    """Solve with a factorization from :func:`gtt_factor` (new array)."""
    n = len(dd)
    x = np.array(b, dtype=float, copy=True)
    for i in range(n - 1):
        if piv[i]:
            x[i], x[i + 1] = x[i + 1], x[i]
        x[i + 1] -= dl[i] * x[i]
    x[n - 1] /= dd[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i]
    return x
