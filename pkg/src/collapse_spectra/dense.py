"""Dense symmetric eigensolver for the small coefficient matrices."""

import numpy as np

from .errors import DimensionMismatch, NotSymmetric

_MAX_DIM = 16


def symmetric_eigen_dense(mat):
    """Eigen-decomposition of a small real symmetric matrix.

    Returns (eigenvalues ascending, orthonormal eigenvector matrix V with
    V[:, k] the k-th eigenvector).  Eigenvector signs are fixed
    deterministically: the entry of largest magnitude in each column is
    made positive.
    """
    m = np.asarray(mat, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > _MAX_DIM:
        raise DimensionMismatch(
            f"matrix order {m.shape[0]} exceeds the supported {_MAX_DIM}")
    scale = np.max(np.abs(m)) if m.size else 0.0
    asym = np.max(np.abs(m - m.T)) if m.size else 0.0
    if asym > 1e-10 * (1.0 + scale):
        raise NotSymmetric(f"relative asymmetry {asym / (1.0 + scale):.3e}")

    vals, vecs = np.linalg.eigh(0.5 * (m + m.T))
    for k in range(vecs.shape[1]):
        pivot = int(np.argmax(np.abs(vecs[:, k])))
        if vecs[pivot, k] < 0.0:
            vecs[:, k] = -vecs[:, k]
    return vals, vecs
