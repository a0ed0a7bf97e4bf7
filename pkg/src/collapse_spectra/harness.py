"""End-to-end validation of the flattening expansion.

The harness closes the loop between the two independent computations this
package provides: the asymptotic prediction

    lam(eps) ~ lam + eps^2 ln(eps) L0_kk + eps^2 L1_kk

assembled from the limit disk problem, and the direct meridian eigensolve
on the flattened surface itself.  ``validate_eigenvalue`` runs the direct
solver over a schedule of aspect ratios, fits the two-term correction with
the limit pinned, and compares the fitted coefficients against the
predicted matrix entries.
"""

import math
from dataclasses import dataclass

from .coeffs import compute_coefficients, ellipsoid_profile
from .ellipse import ExpansionRow, verify_expansion
from .errors import AmbiguousPairing, ConfigError
from .fitting import fit_two_term
from .limit_spectrum import (AngularFactor, BoundaryCondition, eigenpair,
                             group_degenerate)
from .meridian import _mode_entries, default_grid_size
from .tridiag import tridiag_eigen_smallest

DEFAULT_EPS_SCHEDULE = (0.04, 0.02, 0.01, 0.005)
DEFAULT_VALIDATE_GRID_C = 240.0
C1_REL_TOL = 0.03
C2_REL_TOL = 0.15
FALLBACK_DECAY_FACTOR = 1.5


@dataclass(frozen=True)
class ExpansionFit:
    """Fit lam(eps) ~ lam_limit + c1 eps^2 ln(eps) + c2 eps^2 vs. prediction.

    ``passed`` is the machine-readable verdict: both coefficients within
    their relative tolerances, or, failing that, the prediction residual
    |lam_direct - lam_predicted| / eps^2 decaying by at least
    ``FALLBACK_DECAY_FACTOR`` per halving of eps.
    """

    bc: BoundaryCondition
    nu: int
    k: int
    lam_limit: float
    c1_fit: float
    c2_fit: float
    c1_predicted: float
    c2_predicted: float
    c1_rel_error: float
    c2_rel_error: float
    rms_residual: float
    eps_schedule: tuple
    points: tuple            # ((eps, lam_direct), ...) descending in eps
    residual_ratios: tuple   # prediction-residual decay per eps halving
    c1_rel_tol: float
    c2_rel_tol: float
    c1_passed: bool
    c2_passed: bool
    fallback_passed: bool
    passed: bool
    grid_c: float
    grid_sizes: tuple
    richardson: bool
    coefficient_method: str

    def to_dict(self):
        return {
            "bc": self.bc.value,
            "nu": self.nu,
            "k": self.k,
            "lam_limit": self.lam_limit,
            "c1_fit": self.c1_fit,
            "c2_fit": self.c2_fit,
            "c1_predicted": self.c1_predicted,
            "c2_predicted": self.c2_predicted,
            "c1_rel_error": self.c1_rel_error,
            "c2_rel_error": self.c2_rel_error,
            "rms_residual": self.rms_residual,
            "eps_schedule": list(self.eps_schedule),
            "points": [[e, l] for e, l in self.points],
            "residual_ratios": list(self.residual_ratios),
            "c1_rel_tol": self.c1_rel_tol,
            "c2_rel_tol": self.c2_rel_tol,
            "c1_passed": self.c1_passed,
            "c2_passed": self.c2_passed,
            "fallback_passed": self.fallback_passed,
            "passed": self.passed,
            "grid_c": self.grid_c,
            "grid_sizes": list(self.grid_sizes),
            "richardson": self.richardson,
            "coefficient_method": self.coefficient_method,
        }

    @staticmethod
    def from_dict(data):
        return ExpansionFit(
            bc=BoundaryCondition(data["bc"]),
            nu=data["nu"],
            k=data["k"],
            lam_limit=data["lam_limit"],
            c1_fit=data["c1_fit"],
            c2_fit=data["c2_fit"],
            c1_predicted=data["c1_predicted"],
            c2_predicted=data["c2_predicted"],
            c1_rel_error=data["c1_rel_error"],
            c2_rel_error=data["c2_rel_error"],
            rms_residual=data["rms_residual"],
            eps_schedule=tuple(data["eps_schedule"]),
            points=tuple((e, l) for e, l in data["points"]),
            residual_ratios=tuple(data["residual_ratios"]),
            c1_rel_tol=data["c1_rel_tol"],
            c2_rel_tol=data["c2_rel_tol"],
            c1_passed=data["c1_passed"],
            c2_passed=data["c2_passed"],
            fallback_passed=data["fallback_passed"],
            passed=data["passed"],
            grid_c=data["grid_c"],
            grid_sizes=tuple(data["grid_sizes"]),
            richardson=data["richardson"],
            coefficient_method=data["coefficient_method"],
        )


def _even(n):
    n = max(64, int(n))
    return n + (n % 2)


def _direct_family_eigenvalue(eps, m, k, parity, grid_c, richardson):
    """k-th direct eigenvalue of mode m with the given equator parity.

    The solve runs at the grid size implied by ``grid_c``; with
    ``richardson`` a second solve at half resolution removes the leading
    h^2 discretization error via (4 lam_N - lam_{N/2}) / 3.  Returns
    (eigenvalue, full grid size).
    """
    k_per = min(50, 2 * k + 4)

    def rank_value(n_nodes, c_eff):
        entries = _mode_entries(eps, m, k_per, n_nodes, c_eff)
        mine = [e for e in entries if e.parity == parity]
        if len(mine) < k:
            raise ConfigError(
                f"mode m={m} solve returned only {len(mine)} eigenvalues of "
                f"parity {parity:+d}; need rank {k}")
        return mine[k - 1].lam

    n_full = default_grid_size(eps, grid_c)
    lam_full = rank_value(n_full, grid_c)
    if not richardson:
        return lam_full, n_full
    lam_half = rank_value(_even(n_full // 2), 0.5 * grid_c)
    return (4.0 * lam_full - lam_half) / 3.0, n_full


def _pairing_guard(lam_direct, bc, nu, k, eps):
    """Reject the extraction if it drifted out of its limit family slot."""
    lam_k = eigenpair(bc, nu, k).lam
    gaps = [eigenpair(bc, nu, k + 1).lam - lam_k]
    if k >= 2:
        gaps.append(lam_k - eigenpair(bc, nu, k - 1).lam)
    gap = min(gaps)
    diff = abs(lam_direct - lam_k)
    if diff > 0.25 * gap:
        raise AmbiguousPairing(
            f"direct eigenvalue {lam_direct!r} at eps={eps} is {diff:.3e} "
            f"from its limit target {lam_k!r}; exceeds a quarter of the "
            f"family gap {gap:.3e}")


def validate_eigenvalue(bc, nu, k, eps_schedule=DEFAULT_EPS_SCHEDULE,
                        grid_c=DEFAULT_VALIDATE_GRID_C, richardson=True,
                        c1_rel_tol=C1_REL_TOL, c2_rel_tol=C2_REL_TOL):
    """Validate the expansion for one limit eigenvalue family member.

    Fits lam_direct(eps) over the schedule against the basis
    {eps^2 ln eps, eps^2} with the limit eigenvalue pinned, then compares
    the fitted coefficients to the predicted diagonal entries of (L0, L1).
    """
    pair = eigenpair(bc, nu, k)
    schedule = tuple(sorted({float(e) for e in eps_schedule}, reverse=True))
    if len(schedule) < 3:
        raise ConfigError("eps schedule needs at least 3 distinct values")
    for e in schedule:
        if not 0.0 < e <= 0.2:
            raise ConfigError(f"eps={e!r} outside the validated range (0, 0.2]")

    group = group_degenerate(pair.lam)
    coeffs = compute_coefficients(group, ellipsoid_profile())
    idx = next(i for i, p in enumerate(group.members)
               if p.bc is pair.bc and p.nu == pair.nu and p.k == pair.k
               and p.angular_factor in (AngularFactor.CONSTANT,
                                        AngularFactor.COS))
    c1_pred = float(coeffs.lambda0[idx, idx])
    c2_pred = float(coeffs.lambda1[idx, idx])

    parity = 1 if pair.bc is BoundaryCondition.NEUMANN else -1
    points = []
    grid_sizes = []
    for e in schedule:
        lam_d, n_used = _direct_family_eigenvalue(e, nu, k, parity, grid_c,
                                                  richardson)
        _pairing_guard(lam_d, pair.bc, nu, k, e)
        points.append((e, lam_d))
        grid_sizes.append(n_used)
    points = tuple(points)

    fit = fit_two_term(points, pair.lam)
    scale1 = max(abs(c1_pred), 1e-12)
    scale2 = max(abs(c2_pred), 1e-12)
    c1_rel = abs(fit.c1 - c1_pred) / scale1
    c2_rel = abs(fit.c2 - c2_pred) / scale2
    c1_ok = c1_rel <= c1_rel_tol
    c2_ok = c2_rel <= c2_rel_tol

    residuals = []
    for e, lam_d in points:
        w = e * e * math.log(e)
        lam_p = pair.lam + w * (c1_pred + c2_pred / math.log(e))
        residuals.append(abs(lam_d - lam_p) / (e * e))
    ratios = tuple(
        residuals[i] / residuals[i + 1] if residuals[i + 1] > 0.0
        else math.inf
        for i in range(len(residuals) - 1))
    fallback_ok = len(ratios) > 0 and all(r >= FALLBACK_DECAY_FACTOR
                                          for r in ratios)

    return ExpansionFit(
        bc=pair.bc, nu=nu, k=k, lam_limit=pair.lam,
        c1_fit=fit.c1, c2_fit=fit.c2,
        c1_predicted=c1_pred, c2_predicted=c2_pred,
        c1_rel_error=c1_rel, c2_rel_error=c2_rel,
        rms_residual=fit.rms_residual,
        eps_schedule=schedule, points=points, residual_ratios=ratios,
        c1_rel_tol=c1_rel_tol, c2_rel_tol=c2_rel_tol,
        c1_passed=c1_ok, c2_passed=c2_ok, fallback_passed=fallback_ok,
        passed=(c1_ok and c2_ok) or fallback_ok,
        grid_c=grid_c, grid_sizes=tuple(grid_sizes), richardson=richardson,
        coefficient_method=coeffs.method)


@dataclass(frozen=True)
class EllipseCase:
    k: int
    rows: tuple
    ratios: tuple     # successive |residual / eps^2| ratios, shrinking eps
    passed: bool

    def to_dict(self):
        return {
            "k": self.k,
            "rows": [{
                "eps": r.eps,
                "exact": r.exact,
                "expansion": r.expansion,
                "residual": r.residual,
                "residual_over_eps_sq": r.residual_over_eps_sq,
            } for r in self.rows],
            "ratios": list(self.ratios),
            "passed": self.passed,
        }

    @staticmethod
    def from_dict(data):
        rows = tuple(ExpansionRow(eps=r["eps"], exact=r["exact"],
                                  expansion=r["expansion"],
                                  residual=r["residual"],
                                  residual_over_eps_sq=r["residual_over_eps_sq"])
                     for r in data["rows"])
        return EllipseCase(k=data["k"], rows=rows,
                           ratios=tuple(data["ratios"]),
                           passed=data["passed"])


@dataclass(frozen=True)
class EllipseSuite:
    cases: tuple
    passed: bool

    def to_dict(self):
        return {"cases": [c.to_dict() for c in self.cases],
                "passed": self.passed}

    @staticmethod
    def from_dict(data):
        return EllipseSuite(
            cases=tuple(EllipseCase.from_dict(c) for c in data["cases"]),
            passed=data["passed"])


def run_ellipse_suite(k_list=(1, 2, 3), eps_list=(0.05, 0.025, 0.0125),
                      decay_factor=2.0):
    """Closed-form cross-check on the one-dimensional collapsing model.

    For each index k the exact eigenvalue is compared against the
    three-term expansion; the scaled residual |exact - expansion| / eps^2
    must fall by ``decay_factor`` per halving of eps, confirming that the
    expansion captures every term through order eps^2.
    """
    if not k_list or not eps_list:
        raise ConfigError("ellipse suite needs nonempty k and eps lists")
    cases = []
    for k in k_list:
        rows = verify_expansion(k, eps_list)
        scaled = [abs(r.residual_over_eps_sq) for r in rows]
        ratios = tuple(
            scaled[i] / scaled[i + 1] if scaled[i + 1] > 0.0 else math.inf
            for i in range(len(scaled) - 1))
        ok = all(r >= decay_factor for r in ratios) if ratios else False
        cases.append(EllipseCase(k=k, rows=tuple(rows), ratios=ratios,
                                 passed=ok))
    return EllipseSuite(cases=tuple(cases),
                        passed=all(c.passed for c in cases))


@dataclass(frozen=True)
class ConvergenceStudy:
    eps: float
    m: int
    index: int
    grid_sizes: tuple
    values: tuple
    orders: tuple      # observed orders between successive refinements
    saturated: bool    # differences at the eigensolver noise floor

    def to_dict(self):
        return {
            "eps": self.eps,
            "m": self.m,
            "index": self.index,
            "grid_sizes": list(self.grid_sizes),
            "values": list(self.values),
            "orders": list(self.orders),
            "saturated": self.saturated,
        }

    @staticmethod
    def from_dict(data):
        return ConvergenceStudy(
            eps=data["eps"], m=data["m"], index=data["index"],
            grid_sizes=tuple(data["grid_sizes"]),
            values=tuple(data["values"]),
            orders=tuple(data["orders"]),
            saturated=data["saturated"])


def convergence_study(eps, m, grid_sizes, index=1, eigen_fn=None):
    """Observed convergence order of one direct eigenvalue under refinement.

    ``grid_sizes`` must double from one entry to the next.  ``eigen_fn``
    (signature N -> eigenvalue) can replace the built-in meridian solve,
    which makes the order computation testable against synthetic models.
    The ``saturated`` flag marks studies whose successive differences hit
    the eigensolver noise floor, where order estimates stop being
    meaningful.
    """
    sizes = [int(n) for n in grid_sizes]
    if len(sizes) < 3:
        raise ConfigError("convergence study needs at least 3 grid sizes")
    for a, b in zip(sizes, sizes[1:]):
        if b != 2 * a:
            raise ConfigError(
                f"grid sizes must double between entries, got {a} -> {b}")

    if eigen_fn is None:
        from .meridian import assemble, build_grid

        def eigen_fn(n_nodes):
            grid = build_grid(eps, m, n_nodes, grid_c=0.0)
            vals = tridiag_eigen_smallest(assemble(grid), index + 1)
            return vals[index][0]

    values = [float(eigen_fn(n)) for n in sizes]
    diffs = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    scale = 1.0 + abs(values[-1])
    saturated = any(abs(d) <= 1e-10 * scale for d in diffs)
    orders = []
    for i in range(len(diffs) - 1):
        if abs(diffs[i + 1]) <= 1e-300:
            orders.append(math.inf)
        else:
            orders.append(math.log2(abs(diffs[i]) / abs(diffs[i + 1])))
    return ConvergenceStudy(eps=float(eps), m=int(m), index=int(index),
                            grid_sizes=tuple(sizes), values=tuple(values),
                            orders=tuple(orders), saturated=saturated)


@dataclass(frozen=True)
class ValidationReport:
    """Aggregate machine-readable validation artifact."""

    fits: tuple
    ellipse: EllipseSuite
    convergence: ConvergenceStudy
    passed: bool
    provenance: dict

    def to_dict(self):
        return {
            "fits": [f.to_dict() for f in self.fits],
            "ellipse": self.ellipse.to_dict() if self.ellipse else None,
            "convergence": (self.convergence.to_dict()
                            if self.convergence else None),
            "passed": self.passed,
            "provenance": dict(self.provenance),
        }

    @staticmethod
    def from_dict(data):
        return ValidationReport(
            fits=tuple(ExpansionFit.from_dict(f) for f in data["fits"]),
            ellipse=(EllipseSuite.from_dict(data["ellipse"])
                     if data["ellipse"] is not None else None),
            convergence=(ConvergenceStudy.from_dict(data["convergence"])
                         if data["convergence"] is not None else None),
            passed=data["passed"],
            provenance=dict(data["provenance"]))
