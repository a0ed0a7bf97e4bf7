"""Asymptotic coefficient matrices for a degenerate limit eigenvalue.

For a group of eigenfunctions psi_i the two matrices are

  L0_ij = boundary integral of (1/a2) (lam Psi0_i Psi0_j
          - grad Psi0_i . grad Psi0_j + Psi1_i Psi1_j),

  L1_ij = -lim_{delta->0} [ bulk integrals over the disk minus a
          delta-collar + ln(delta) * B_ij ] - (1 + 4 ln 2 + ln a2) * B_ij,

where B = L0 / 4 and the bulk integrand combines
(|grad h|^2 / 2)(lam psi_i psi_j - grad psi_i . grad psi_j) with
(grad h . grad psi_i)(grad h . grad psi_j), summed over both sides of the
surface.  Angular integrals are evaluated in closed form, so only radial
quadratures remain; the delta -> 0 limit is taken by a {1, sqrt(delta),
delta} least-squares extrapolation, which absorbs the proven
O(sqrt(delta)) remainder.

The eigenvalue corrections are the eigenvalues mu_k of
L0 + (1/ln eps) L1, entering as lam(eps) ~ lam + eps^2 ln(eps) * mu_k.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dense import symmetric_eigen_dense
from .errors import ConfigError, DomainError, ExtrapolationUnstable, UnsupportedFamily
from .fitting import SqrtDeltaSeries, extrapolate_sqrt_delta
from .limit_spectrum import (AngularFactor, BoundaryCondition, with_rotation,
                             radial_eval)
from .quadrature import integrate_adaptive
from .specfun import bessel_j

DEFAULT_DELTA_SCHEDULE = (4e-2, 2e-2, 1e-2, 5e-3, 2.5e-3)

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class FlatteningProfile:
    """Radial height profile h(r) of the collapsing surface.

    ``grad_h_sq(r)`` is |grad h|^2 = h'(r)^2, kept as its own callable
    because it stays finite in formulas even where h' itself blows up at
    the rim.  ``a2`` is the leading Taylor coefficient of the rim
    cross-section: with tau = 1 - r and t the height coordinate, the edge
    curve is tau = a2 t^2 + O(t^3).
    """

    name: str
    h: callable
    dh: callable
    grad_h_sq: callable
    a2: float
    symmetric: bool = True

    @property
    def is_ellipsoid(self):
        return self.name == "ellipsoid"


def ellipsoid_profile():
    """h(r) = sqrt(1 - r^2); the flattened-ellipsoid worked case (a2 = 1/2)."""
    return FlatteningProfile(
        name="ellipsoid",
        h=lambda r: math.sqrt(max(1.0 - r * r, 0.0)),
        dh=lambda r: -r / math.sqrt(1.0 - r * r),
        grad_h_sq=lambda r: r * r / (1.0 - r * r),
        a2=0.5,
    )


def profile_from_q_polynomial(coeffs):
    """Profile h = sqrt(q(r)) for q(r) = sum_j coeffs[j] * r^(2j).

    Requires q(1) = 0, q'(1) < 0 and q > 0 on [0, 1).  The rim datum
    follows from inverting t = h(r) near r = 1: q ~ -q'(1) tau gives
    tau = t^2 / (-q'(1)), hence a2 = -1/q'(1).
    """
    c = [float(x) for x in coeffs]
    if len(c) < 2:
        raise ConfigError("need at least two q coefficients")

    def q(r):
        r2 = r * r
        acc = 0.0
        for a in reversed(c):
            acc = acc * r2 + a
        return acc

    def dq(r):
        r2 = r * r
        acc = 0.0
        for j in range(len(c) - 1, 0, -1):
            acc = acc * r2 + 2.0 * j * c[j]
        return acc * r

    scale = max(abs(x) for x in c)
    if abs(q(1.0)) > 1e-12 * (1.0 + scale):
        raise ConfigError(f"q(1) = {q(1.0)!r} must vanish")
    qp1 = dq(1.0)
    if not qp1 < 0.0:
        raise ConfigError("q'(1) must be negative (simple rim zero)")
    for r in np.linspace(0.0, 0.999, 200):
        if q(float(r)) <= 0.0:
            raise ConfigError(f"q must be positive on [0, 1); q({r!r}) <= 0")
    return FlatteningProfile(
        name=f"q_poly{tuple(c)!r}",
        h=lambda r: math.sqrt(max(q(r), 0.0)),
        dh=lambda r: dq(r) / (2.0 * math.sqrt(q(r))),
        grad_h_sq=lambda r: dq(r) ** 2 / (4.0 * q(r)),
        a2=-1.0 / qp1,
    )


def _angular_products(fi, nui, fj, nuj):
    """Closed-form (<A_i A_j>, <A_i' A_j'>) over theta in [0, 2 pi)."""
    if fi is AngularFactor.CONSTANT and fj is AngularFactor.CONSTANT:
        return 2.0 * math.pi, 0.0
    if fi is AngularFactor.CONSTANT or fj is AngularFactor.CONSTANT:
        return 0.0, 0.0
    if fi is not fj or nui != nuj:
        return 0.0, 0.0
    return math.pi, nui * nuj * math.pi


def lambda0(group, profile):
    """The boundary coefficient matrix; angular integrals in closed form."""
    m = group.multiplicity
    lam = group.lam
    out = np.zeros((m, m))
    inv_a2 = 1.0 / profile.a2
    for i in range(m):
        ti = group.traces[i]
        for j in range(i, m):
            tj = group.traces[j]
            aa, dd = _angular_products(ti.angular_factor, ti.nu,
                                       tj.angular_factor, tj.nu)
            val = inv_a2 * (lam * ti.psi0_amplitude * tj.psi0_amplitude * aa
                            - ti.psi0_amplitude * tj.psi0_amplitude * dd
                            + ti.psi1_amplitude * tj.psi1_amplitude * aa)
            out[i, j] = val
            out[j, i] = val
    return out


def _bulk_integrals(pair_i, pair_j, profile, delta, quad_tol):
    """Radial bulk integrals over r in [0, 1 - delta].

    Returns (I1, I2) with
      I1 = int grad_h_sq (lam R_i R_j + R_i' R_j') r dr,
      I2 = int grad_h_sq R_i R_j / r dr.
    The edge half is integrated in u = sqrt(1 - r), which flattens the
    1/(1 - r) growth cut off at delta.
    """
    lam = pair_i.lam

    def f1(r):
        ri, di = radial_eval(pair_i, r)
        rj, dj = radial_eval(pair_j, r)
        return profile.grad_h_sq(r) * (lam * ri * rj + di * dj) * r

    def f2(r):
        ri, _ = radial_eval(pair_i, r)
        rj, _ = radial_eval(pair_j, r)
        return profile.grad_h_sq(r) * ri * rj / r

    split = 0.5
    upper = 1.0 - delta

    def edge(f):
        # r = 1 - u^2, dr = -2u du maps [split, upper] to sqrt-space.
        g = lambda u: 2.0 * u * f(1.0 - u * u)
        return integrate_adaptive(g, math.sqrt(1.0 - upper),
                                  math.sqrt(1.0 - split), tol=quad_tol).value

    i1 = integrate_adaptive(f1, 0.0, split, tol=quad_tol).value + edge(f1)
    need_i2 = pair_i.nu >= 1 and pair_j.nu >= 1
    i2 = (integrate_adaptive(f2, 1e-12, split, tol=quad_tol).value + edge(f2)
          if need_i2 else 0.0)
    return i1, i2


def lambda1_general(group, profile, delta_schedule=DEFAULT_DELTA_SCHEDULE,
                    quad_tol=1e-11, extrap_tol=2e-3):
    """L1 by direct delta-regularization of the defining bulk integrals.

    Independent of the reduced radial route: evaluates the collar-cutoff
    integrals on the given delta schedule, cancels the ln(delta)
    counterterm, extrapolates delta -> 0 in the {1, sqrt(delta), delta}
    basis, and subtracts the (1 + 4 ln 2 + ln a2) boundary term.
    """
    schedule = sorted(set(float(d) for d in delta_schedule), reverse=True)
    if len(schedule) < 3:
        raise ConfigError("delta schedule needs at least 3 values")
    if schedule[0] > 0.2 or schedule[-1] <= 0.0:
        raise ConfigError("delta schedule must lie in (0, 0.2]")

    m = group.multiplicity
    lam0 = lambda0(group, profile)
    counter = lam0 / 4.0
    out = np.zeros((m, m))
    bulk_cache = {}

    for i in range(m):
        pi = group.members[i]
        for j in range(i, m):
            pj = group.members[j]
            aa, dd = _angular_products(pi.angular_factor, pi.nu,
                                       pj.angular_factor, pj.nu)
            side = 0.5 * (1.0 + pi.side_sign * pj.side_sign)
            if side == 0.0 or (aa == 0.0 and dd == 0.0):
                out[i, j] = out[j, i] = -(0.0) - (1.0 + 4.0 * _LN2
                                                  + math.log(profile.a2)) * counter[i, j]
                continue
            samples = []
            for delta in schedule:
                key = (pi.bc, pi.nu, pi.k, pj.bc, pj.nu, pj.k, delta)
                if key not in bulk_cache:
                    bulk_cache[key] = _bulk_integrals(pi, pj, profile, delta,
                                                      quad_tol)
                i1, i2 = bulk_cache[key]
                bulk = side * (aa * i1 - dd * i2)
                samples.append((delta, bulk + math.log(delta) * counter[i, j]))
            limit, err = extrapolate_sqrt_delta(SqrtDeltaSeries(samples))
            if err > extrap_tol:
                raise ExtrapolationUnstable(
                    f"delta extrapolation error {err:.3e} exceeds {extrap_tol:.1e} "
                    f"for entry ({i}, {j})")
            val = -limit - (1.0 + 4.0 * _LN2 + math.log(profile.a2)) * counter[i, j]
            out[i, j] = out[j, i] = val
    return out


def lambda1_radial_reduced(pair, profile, quad_tol=1e-12):
    """L1 diagonal entry from the family-specific reduced radial formula.

    Implemented families on the ellipsoid profile: Dirichlet nu = 0 and
    Neumann nu = 1 (any radial index).  The integrand is pre-subtracted so
    it stays finite at r = 1, and the ln 2 term carries the rest.
    """
    if not profile.is_ellipsoid:
        raise UnsupportedFamily(
            "reduced radial formulas are derived for the ellipsoid profile")
    kappa = pair.kappa
    lam = pair.lam
    if pair.bc is BoundaryCondition.DIRICHLET and pair.nu == 0:
        j1k = bessel_j(1, kappa)

        def f(r):
            kr = kappa * r
            return (r ** 3 / (1.0 - r * r)) * (
                bessel_j(0, kr) ** 2 + bessel_j(1, kr) ** 2 - j1k * j1k)

        integral = integrate_adaptive(f, 0.0, 1.0, tol=quad_tol).value
        return -lam / (j1k * j1k) * integral - lam * _LN2
    if pair.bc is BoundaryCondition.NEUMANN and pair.nu == 1:
        j0k = bessel_j(0, kappa)
        j1k = bessel_j(1, kappa)

        def f(r):
            kr = kappa * r
            b0 = bessel_j(0, kr)
            b1 = bessel_j(1, kr)
            bracket = (b1 * b1 - j1k * j1k + b0 * b0 + j0k * j0k
                       - 2.0 / kr * b0 * b1)
            return (r ** 3 / (1.0 - r * r)) * bracket

        integral = integrate_adaptive(f, 1e-12, 1.0, tol=quad_tol).value
        return -lam / (j0k * j0k * (kappa * kappa - 1.0)) * integral - lam * _LN2
    raise UnsupportedFamily(
        f"no reduced formula for ({pair.bc.value}, nu={pair.nu})")


@dataclass(frozen=True)
class CoefficientMatrices:
    """The pair (L0, L1) for one degenerate group."""

    lambda0: np.ndarray
    lambda1: np.ndarray
    group: object
    a2: float
    method: str

    def mu_at(self, eps):
        return mu_eigenvalues(self.lambda0, self.lambda1, eps)

    def predict_at(self, eps):
        return predict(self.group.lam, self.lambda0, self.lambda1, eps)


@dataclass(frozen=True)
class Prediction:
    """Three-term eigenvalue prediction lam + eps^2 ln(eps) mu_k(1/ln eps)."""

    lam_limit: float
    mu_at: callable
    order_note: str = "remainder O(eps^(2+rho)) for any rho in (0, 1/2)"


def compute_coefficients(group, profile, method="auto",
                         delta_schedule=DEFAULT_DELTA_SCHEDULE,
                         extrap_tol=2e-3):
    """Assemble both matrices, preferring the reduced route when it exists.

    ``method``: "reduced" (diagonal from the closed radial formulas),
    "general" (delta-regularized bulk integrals), or "auto".
    ``extrap_tol`` bounds the delta -> 0 extrapolation error estimate of
    the general route.
    """
    l0 = lambda0(group, profile)
    reduced_ok = profile.is_ellipsoid and all(
        (p.bc is BoundaryCondition.DIRICHLET and p.nu == 0)
        or (p.bc is BoundaryCondition.NEUMANN and p.nu == 1)
        for p in group.members)
    if method not in ("auto", "reduced", "general"):
        raise ConfigError(f"unknown coefficient method {method!r}")
    if method == "reduced" and not reduced_ok:
        raise UnsupportedFamily(
            "reduced route requested for a family without a reduced formula")
    if method == "auto":
        method = "reduced" if reduced_ok else "general"
    if method == "reduced":
        # Off-diagonal entries vanish by angular orthogonality for these
        # families; the diagonal comes from the closed radial formula.
        m = group.multiplicity
        l1 = np.zeros((m, m))
        for i, p in enumerate(group.members):
            l1[i, i] = lambda1_radial_reduced(p, profile)
    else:
        l1 = lambda1_general(group, profile, delta_schedule=delta_schedule,
                             extrap_tol=extrap_tol)
    return CoefficientMatrices(lambda0=l0, lambda1=l1, group=group,
                               a2=profile.a2, method=method)


def mu_eigenvalues(l0, l1, eps):
    """Ascending eigenvalues of L0 + (1/ln eps) L1 at 0 < eps < 1."""
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"mu_eigenvalues needs 0 < eps < 1, got {eps!r}")
    mat = np.asarray(l0, dtype=float) + np.asarray(l1, dtype=float) / math.log(eps)
    vals, _ = symmetric_eigen_dense(mat)
    return [float(v) for v in vals]


def diagonalize_group(group, l0, l1, eps):
    """Rotate the group basis so L0 + (1/ln eps) L1 is diagonal.

    Returns (rotated group, diagonal entries ascending).  Disk groups are
    already diagonal, in which case the rotation is the identity up to
    column signs.
    """
    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"diagonalize_group needs 0 < eps < 1, got {eps!r}")
    mat = np.asarray(l0, dtype=float) + np.asarray(l1, dtype=float) / math.log(eps)
    vals, vecs = symmetric_eigen_dense(mat)
    check = vecs.T @ mat @ vecs
    off = np.max(np.abs(check - np.diag(np.diag(check))))
    if off > 1e-10 * (1.0 + np.max(np.abs(np.diag(check)))):
        raise ExtrapolationUnstable(
            f"rotated matrix off-diagonal {off:.3e} above tolerance")
    return with_rotation(group, vecs), [float(v) for v in vals]


def predict(lam_limit, l0, l1, eps):
    """Three-term prediction lam + eps^2 ln(eps) mu_k; exact limit at eps = 1."""
    eps = float(eps)
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"predict needs 0 < eps <= 1, got {eps!r}")
    m = np.asarray(l0).shape[0]
    if eps == 1.0:
        return [float(lam_limit)] * m
    mus = mu_eigenvalues(l0, l1, eps)
    w = eps * eps * math.log(eps)
    return [float(lam_limit) + w * mu for mu in mus]
