"""Exact one-dimensional model: eigenvalues of the boundary ellipse.

A circle of radius 1 flattened to aspect ratio eps has perimeter
L = 4 E(1 - eps^2) (parameter convention), and the Laplacian on that
closed curve has eigenvalues (2 pi k / L)^2 = (pi k / (2 E(1 - eps^2)))^2.
Their eps -> 0 expansion

    lam_k(eps) = k^2 pi^2/4 + (k^2 pi^2/4) eps^2 ln(eps)
                 + (k^2 pi^2/2)(1/4 - ln 2) eps^2 + O(eps^(2+rho))

is the only closed-form instance of the general three-term asymptotics,
which makes it the end-to-end oracle for the fitting harness.
"""

import math
from dataclasses import dataclass

from .errors import ConfigError, DomainError
from .specfun import elliptic_E


def _check_k(k):
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ConfigError(f"mode index k={k!r} must be a positive integer")


@dataclass(frozen=True)
class EllipseModel:
    """The flattened unit circle at one aspect ratio."""

    eps: float
    perimeter: float

    def __init__(self, eps):
        eps = float(eps)
        if not 0.0 < eps <= 1.0:
            raise DomainError(f"eps={eps!r} outside (0, 1]")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "perimeter", 4.0 * elliptic_E(1.0 - eps * eps))

    def eigenvalue(self, k):
        _check_k(k)
        return (2.0 * math.pi * k / self.perimeter) ** 2


def exact_eigenvalue(k, eps):
    """(pi k / (2 E(1 - eps^2)))^2, the k-th exact ellipse eigenvalue."""
    _check_k(k)
    return EllipseModel(eps).eigenvalue(k)


def expansion_eigenvalue(k, eps):
    """The three-term small-eps expansion of exact_eigenvalue."""
    _check_k(k)
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"expansion needs 0 < eps < 1, got {eps!r}")
    lead = k * k * math.pi * math.pi / 4.0
    e2 = eps * eps
    return lead + lead * e2 * math.log(eps) + 2.0 * lead * (0.25 - math.log(2.0)) * e2


@dataclass(frozen=True)
class ExpansionRow:
    eps: float
    exact: float
    expansion: float
    residual: float
    residual_over_eps_sq: float


def verify_expansion(k, eps_list):
    """Residual table |exact - expansion| along decreasing eps.

    Rows are sorted by decreasing eps so the residual/eps^2 column should
    read as decreasing toward zero.
    """
    _check_k(k)
    eps_vals = sorted({float(e) for e in eps_list}, reverse=True)
    if len(eps_vals) < 2:
        raise ConfigError("need at least 2 distinct eps values")
    rows = []
    for eps in eps_vals:
        if not 0.0 < eps < 1.0:
            raise DomainError(f"eps={eps!r} outside (0, 1)")
        exact = exact_eigenvalue(k, eps)
        expan = expansion_eigenvalue(k, eps)
        res = abs(exact - expan)
        rows.append(ExpansionRow(eps=eps, exact=exact, expansion=expan,
                                 residual=res,
                                 residual_over_eps_sq=res / (eps * eps)))
    return rows
