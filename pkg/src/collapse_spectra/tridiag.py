"""Symmetric (optionally generalized) tridiagonal eigensolver.

Eigenvalues come from bisection on Sturm-sequence counts, eigenvectors from
shifted inverse iteration; both hot loops live in the kernels module.  The
generalized problem A f = lambda M f with positive diagonal M is reduced by
the similarity M^{-1/2} A M^{-1/2}, never by forming inverses.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NonConvergence, NonPositiveMass

_EPS = 2.220446049250313e-16
_SAFMIN = 2.2250738585072014e-308


@dataclass(frozen=True)
class TridiagonalSystem:
    """A f = lambda f, or A f = lambda M f when a mass diagonal is given."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray
    mass_diagonal: np.ndarray = None

    def __post_init__(self):
        d = np.ascontiguousarray(self.diagonal, dtype=float)
        e = np.ascontiguousarray(self.off_diagonal, dtype=float)
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)
        if d.ndim != 1 or d.size < 1:
            raise DimensionMismatch("diagonal must be a vector of length >= 1")
        if e.shape != (d.size - 1,):
            raise DimensionMismatch(
                f"off-diagonal length {e.size} does not match N={d.size}")
        if self.mass_diagonal is not None:
            m = np.ascontiguousarray(self.mass_diagonal, dtype=float)
            object.__setattr__(self, "mass_diagonal", m)
            if m.shape != d.shape:
                raise DimensionMismatch("mass diagonal length mismatch")
            if not np.all(m > 0.0):
                raise NonPositiveMass("mass diagonal must be strictly positive")

    @property
    def size(self):
        return self.diagonal.size


def _reduced(sys):
    """Diagonal and off-diagonal of M^{-1/2} A M^{-1/2}."""
    if sys.mass_diagonal is None:
        return sys.diagonal, sys.off_diagonal
    m = sys.mass_diagonal
    d = sys.diagonal / m
    e = sys.off_diagonal / np.sqrt(m[:-1] * m[1:]) if sys.size > 1 else sys.off_diagonal
    return np.ascontiguousarray(d), np.ascontiguousarray(e)


def _bisect_values(d, e2, k, pivmin):
    """The k smallest eigenvalues via Sturm-count bisection."""
    n = d.size
    radius = np.zeros(n)
    if n > 1:
        ae = np.sqrt(e2)
        radius[:-1] += ae
        radius[1:] += ae
    glo = float(np.min(d - radius))
    ghi = float(np.max(d + radius))
    pad = 2.0 * _EPS * max(abs(glo), abs(ghi)) + 2.0 * pivmin
    glo -= pad
    ghi += pad
    span = ghi - glo
    atol = max(2.0 * pivmin, min(1e-14, _EPS * span))

    lo = np.full(k, glo)
    hi = np.full(k, ghi)
    targets = np.arange(1, k + 1)
    for _ in range(220):
        width = hi - lo
        tol = np.maximum(atol, 2.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi)))
        active = width > tol
        if not np.any(active):
            break
        mids = 0.5 * (lo[active] + hi[active])
        counts = kernels.sturm_counts(d, e2, mids, pivmin)
        below = counts >= targets[active]
        idx = np.flatnonzero(active)
        hi[idx[below]] = mids[below]
        lo[idx[~below]] = mids[~below]
    vals = 0.5 * (lo + hi)
    return np.maximum.accumulate(vals)  # enforce nondecreasing despite roundoff


def _tri_matvec(d, e, v):
    out = d * v
    if d.size > 1:
        out[:-1] += e * v[1:]
        out[1:] += e * v[:-1]
    return out


def _inverse_iteration(d, e, lam, seeds, ortho):
    """One eigenvector of the reduced problem at converged eigenvalue lam."""
    n = d.size
    factor = kernels.gtt_factor(d, e, lam)
    best = None
    for trial in range(4):
        rng = np.random.default_rng(1234567 + 97 * seeds + trial)
        v = rng.uniform(-0.5, 0.5, n)
        for _ in range(6):
            for u in ortho:
                v -= (u @ v) * u
            nv = np.linalg.norm(v)
            if nv == 0.0:
                break
            v = kernels.gtt_solve(*factor, v / nv)
            nv = np.linalg.norm(v)
            if not np.isfinite(nv) or nv == 0.0:
                break
            v /= nv
            for u in ortho:
                v -= (u @ v) * u
            nv = np.linalg.norm(v)
            if nv < 1e-3:
                break  # start vector lay in the cluster span; reseed
            v /= nv
            res = np.linalg.norm(_tri_matvec(d, e, v) - lam * v)
            scale = max(np.max(np.abs(d)) + 2.0 * (np.max(np.abs(e)) if e.size else 0.0), 1.0)
            if res <= 64.0 * _EPS * scale or res <= 1e-10 * (1.0 + abs(lam)):
                return v
            if best is None or res < best[0]:
                best = (res, v.copy())
    if best is None:
        raise NonConvergence("inverse iteration produced no usable vector")
    return best[1]


def tridiag_eigen_smallest(sys, k, want_vectors=False, residual_tol=1e-8):
    """The k smallest eigenvalues (and optionally eigenvectors).

    Returns a list of (eigenvalue, eigenvector-or-None) in nondecreasing
    eigenvalue order.  Vector residuals satisfy
    ||A f - lambda M f|| / ||f|| <= residual_tol * (1 + |lambda|), floored
    at the level machine arithmetic permits for the matrix norm at hand.
    """
    if not isinstance(sys, TridiagonalSystem):
        sys = TridiagonalSystem(*sys)
    n = sys.size
    if not 1 <= k <= n:
        raise DimensionMismatch(f"requested k={k} of an order-{n} system")

    d, e = _reduced(sys)
    e2 = np.ascontiguousarray(e * e)
    e2max = float(np.max(e2)) if e2.size else 0.0
    pivmin = _SAFMIN * max(e2max, 1.0)

    vals = _bisect_values(d, e2, k, pivmin)
    if not want_vectors:
        return [(float(v), None) for v in vals]

    results = []
    cluster = []  # reduced-basis vectors of the current near-degenerate run
    cluster_lam = None
    sqrt_m = np.sqrt(sys.mass_diagonal) if sys.mass_diagonal is not None else None
    a_scale = float(np.max(np.abs(sys.diagonal))) + 2.0 * (
        float(np.max(np.abs(sys.off_diagonal))) if n > 1 else 0.0)
    # Residuals of the generalized problem are inherited from the reduced
    # similarity system: ||A f - lam M f|| <= max(M) ||T v - lam v|| for the
    # back-transformed unit vector, so the machine floor must use the reduced
    # scale (which carries the diag/mass amplification) times max(M).
    red_scale = float(np.max(np.abs(d))) + 2.0 * (
        float(np.max(np.abs(e))) if n > 1 else 0.0)
    if sys.mass_diagonal is not None:
        red_scale *= float(np.max(sys.mass_diagonal))
    floor = 64.0 * _EPS * max(a_scale, red_scale, 1.0)
    for j, lam in enumerate(vals):
        lam = float(lam)
        if cluster_lam is None or abs(lam - cluster_lam) > 1e-8 * (1.0 + abs(lam)):
            cluster = []
        cluster_lam = lam
        v = _inverse_iteration(d, e, lam, j, cluster)
        cluster.append(v)

        if sqrt_m is not None:
            f = v / sqrt_m
        else:
            f = v
        f = f / np.linalg.norm(f)
        # Rayleigh polish: sharper than the bisection interval midpoint.
        af = _tri_matvec(sys.diagonal, sys.off_diagonal, f)
        mf = sys.mass_diagonal * f if sys.mass_diagonal is not None else f
        lam_r = float(f @ af) / float(f @ mf)
        if abs(lam_r - lam) <= 1e-6 * (1.0 + abs(lam)):
            lam = lam_r
        res = np.linalg.norm(af - lam * mf)
        if res > max(residual_tol * (1.0 + abs(lam)), floor):
            raise NonConvergence(
                f"eigenvector residual {res:.3e} exceeds tolerance at lambda={lam!r}")
        results.append((lam, f))

    results.sort(key=lambda t: t[0])
    return results
