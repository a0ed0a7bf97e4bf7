"""Tridiagonal eigensolver tests against dense oracles.

The Sturm-bisection values are compared with numpy.linalg.eigvalsh on the
densified matrix for random instances up to N = 50, covering both the
standard and the generalized (mass-weighted) problem.
"""

import numpy as np
import pytest

from collapse_spectra.errors import (DimensionMismatch, NonPositiveMass)
from collapse_spectra.tridiag import TridiagonalSystem, tridiag_eigen_smallest


def _dense(d, e):
    n = len(d)
    mat = np.diag(np.asarray(d, dtype=float))
    if n > 1:
        mat += np.diag(e, 1) + np.diag(e, -1)
    return mat


def _random_system(rng, n, with_mass):
    d = rng.uniform(-2.0, 2.0, n)
    e = rng.uniform(-1.5, 1.5, max(n - 1, 0))
    mass = rng.uniform(0.2, 3.0, n) if with_mass else None
    return d, e, mass


def test_discrete_laplacian_eigenvalues():
    """-u'' on a uniform grid: lam_k = 2 - 2 cos(k pi / (n+1)), exactly known."""
    n = 40
    sys = TridiagonalSystem(np.full(n, 2.0), np.full(n - 1, -1.0))
    got = [v for v, _ in tridiag_eigen_smallest(sys, 10)]
    want = [2.0 - 2.0 * np.cos(k * np.pi / (n + 1)) for k in range(1, 11)]
    assert np.allclose(got, want, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 20, 50])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_values_match_dense_oracle(n, seed):
    rng = np.random.default_rng(1000 * n + seed)
    d, e, _ = _random_system(rng, n, with_mass=False)
    k = min(n, 6)
    got = [v for v, _ in tridiag_eigen_smallest(TridiagonalSystem(d, e), k)]
    want = np.sort(np.linalg.eigvalsh(_dense(d, e)))[:k]
    assert np.allclose(got, want, atol=1e-10, rtol=1e-10)


@pytest.mark.parametrize("n", [2, 5, 13, 50])
@pytest.mark.parametrize("seed", [3, 4])
def test_generalized_values_match_dense_oracle(n, seed):
    rng = np.random.default_rng(9000 + 100 * n + seed)
    d, e, mass = _random_system(rng, n, with_mass=True)
    k = min(n, 5)
    sys = TridiagonalSystem(d, e, mass_diagonal=mass)
    got = [v for v, _ in tridiag_eigen_smallest(sys, k)]
    # Oracle: similarity reduction M^(-1/2) A M^(-1/2).
    s = 1.0 / np.sqrt(mass)
    reduced = _dense(d, e) * np.outer(s, s)
    want = np.sort(np.linalg.eigvalsh(reduced))[:k]
    assert np.allclose(got, want, atol=1e-10, rtol=1e-10)


@pytest.mark.parametrize("with_mass", [False, True])
def test_eigenvectors_satisfy_residual_and_orthogonality(with_mass):
    rng = np.random.default_rng(42)
    n = 30
    d, e, mass = _random_system(rng, n, with_mass)
    sys = TridiagonalSystem(d, e, mass_diagonal=mass)
    pairs = tridiag_eigen_smallest(sys, 6, want_vectors=True)
    amat = _dense(d, e)
    mvec = mass if with_mass else np.ones(n)
    for lam, vec in pairs:
        assert vec is not None
        assert abs(np.linalg.norm(vec) - 1.0) < 1e-12
        res = np.linalg.norm(amat @ vec - lam * mvec * vec)
        assert res < 1e-7 * (1.0 + abs(lam))
    # Distinct eigenvalues give M-orthogonal eigenvectors.
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            li, vi = pairs[i]
            lj, vj = pairs[j]
            if abs(li - lj) > 1e-6:
                assert abs(vi @ (mvec * vj)) < 1e-7


def test_degenerate_cluster_vectors_are_orthogonal():
    # diag(1, 1, 2) with zero coupling: lam = 1 is a true double eigenvalue.
    sys = TridiagonalSystem([1.0, 1.0, 2.0], [0.0, 0.0])
    pairs = tridiag_eigen_smallest(sys, 2, want_vectors=True)
    (l1, v1), (l2, v2) = pairs
    assert abs(l1 - 1.0) < 1e-12 and abs(l2 - 1.0) < 1e-12
    assert abs(v1 @ v2) < 1e-8


def test_values_only_mode_returns_none_vectors():
    sys = TridiagonalSystem([2.0, 2.0], [-1.0])
    pairs = tridiag_eigen_smallest(sys, 2)
    assert all(vec is None for _, vec in pairs)


def test_single_entry_system():
    pairs = tridiag_eigen_smallest(TridiagonalSystem([4.0], []), 1,
                                   want_vectors=True)
    lam, vec = pairs[0]
    assert abs(lam - 4.0) < 1e-14
    assert abs(abs(vec[0]) - 1.0) < 1e-14


def test_mass_scaling_scales_eigenvalues():
    """A f = lam (c M) f has eigenvalues (1/c) times those of A f = lam M f."""
    rng = np.random.default_rng(5)
    d, e, mass = _random_system(rng, 12, with_mass=True)
    base = [v for v, _ in tridiag_eigen_smallest(
        TridiagonalSystem(d, e, mass_diagonal=mass), 4)]
    scaled = [v for v, _ in tridiag_eigen_smallest(
        TridiagonalSystem(d, e, mass_diagonal=4.0 * mass), 4)]
    assert np.allclose(scaled, np.asarray(base) / 4.0, atol=1e-11)


def test_rejects_nonpositive_mass():
    with pytest.raises(NonPositiveMass):
        TridiagonalSystem([1.0, 1.0], [0.5], mass_diagonal=[1.0, 0.0])


def test_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        TridiagonalSystem([1.0, 2.0], [0.1, 0.2])
    with pytest.raises(DimensionMismatch):
        TridiagonalSystem([1.0, 2.0], [0.1], mass_diagonal=[1.0])


def test_rejects_k_out_of_range():
    sys = TridiagonalSystem([1.0, 2.0], [0.1])
    with pytest.raises(DimensionMismatch):
        tridiag_eigen_smallest(sys, 3)
    with pytest.raises(DimensionMismatch):
        tridiag_eigen_smallest(sys, 0)
