"""Least-squares helpers: the two-term expansion fit and the regularized
delta -> 0 extrapolation.

Both fits canonicalize their input order first, so the results are exactly
invariant under permutation of the sample points.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DegenerateDesign


@dataclass(frozen=True)
class TwoTermFit:
    """Coefficients of residual ~ c1*eps^2*ln(eps) + c2*eps^2."""

    c1: float
    c2: float
    rms_residual: float


def fit_two_term(points, lam_limit):
    """Fit lambda(eps) - lam_limit in the basis {eps^2 ln(eps), eps^2}.

    ``points`` is an iterable of (eps, lambda_direct).  The limit value is
    held fixed, never fitted: the basis columns are nearly collinear and
    freeing the constant term destroys the conditioning.
    """
    pts = sorted((float(e), float(v)) for e, v in points)
    if len(pts) < 3:
        raise ConfigError("fit_two_term needs at least 3 points")
    eps = np.array([p[0] for p in pts])
    lam = np.array([p[1] for p in pts])
    if np.any(eps <= 0.0) or np.any(eps >= 1.0):
        raise ConfigError("eps values must lie in (0, 1)")
    if len(set(eps.tolist())) != len(pts):
        raise DegenerateDesign("repeated eps values make the design singular")

    x1 = eps * eps * np.log(eps)
    x2 = eps * eps
    y = lam - lam_limit
    design = np.column_stack([x1, x2])
    gram = design.T @ design
    det = gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]
    if not det > 1e-12 * gram[0, 0] * gram[1, 1]:
        raise DegenerateDesign("basis columns {eps^2 ln eps, eps^2} are collinear")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    rms = float(np.sqrt(np.mean(resid * resid)))
    return TwoTermFit(c1=float(coef[0]), c2=float(coef[1]), rms_residual=rms)


@dataclass(frozen=True)
class SqrtDeltaSeries:
    """Samples (delta, value) of a quantity with a sqrt(delta) remainder.

    Stored with delta strictly decreasing; the constructor sorts and
    validates.
    """

    samples: tuple = field(default_factory=tuple)

    def __init__(self, samples):
        pts = sorted(((float(d), float(v)) for d, v in samples), reverse=True)
        if len(pts) < 3:
            raise ConfigError("need at least 3 (delta, value) samples")
        deltas = [p[0] for p in pts]
        if any(d <= 0 for d in deltas):
            raise ConfigError("delta values must be positive")
        if len(set(deltas)) != len(deltas):
            raise ConfigError("delta values must be distinct")
        object.__setattr__(self, "samples", tuple(pts))

    @property
    def deltas(self):
        return np.array([p[0] for p in self.samples])

    @property
    def values(self):
        return np.array([p[1] for p in self.samples])


def extrapolate_sqrt_delta(series):
    """Extrapolate value(delta) = I0 + c*sqrt(delta) + d*delta to delta = 0.

    The fit is generalized least squares with weights 1/delta^3: the first
    term beyond the basis scales like delta^(3/2), so residual standard
    deviations grow like delta^(3/2) and the small-delta samples carry the
    information about I0.  Series lying exactly in span{1, sqrt(delta),
    delta} are reproduced exactly under any weighting.

    Returns (I0, error_estimate); the error estimate is the standard error
    of the fitted constant term (zero for a square system).
    """
    if not isinstance(series, SqrtDeltaSeries):
        series = SqrtDeltaSeries(series)
    d = series.deltas
    v = series.values
    design = np.column_stack([np.ones_like(d), np.sqrt(d), d])
    sqrt_w = (d / d[-1]) ** -1.5
    wd = design * sqrt_w[:, None]
    wv = v * sqrt_w
    gram = wd.T @ wd
    if np.linalg.cond(gram) > 1e14:
        raise DegenerateDesign("delta schedule gives a singular {1, sqrt, linear} basis")
    coef, *_ = np.linalg.lstsq(wd, wv, rcond=None)
    resid = wv - wd @ coef
    dof = len(v) - 3
    if dof > 0:
        sigma_sq = float(resid @ resid) / dof
        cov00 = float(np.linalg.inv(gram)[0, 0])
        err = math.sqrt(max(sigma_sq * cov00, 0.0))
    else:
        err = 0.0
    return float(coef[0]), err
