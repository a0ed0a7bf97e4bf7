"""Acceptance gate: the eight headline checks, one verdict line each.

Each test prints a single ``[criterion N] PASS|FAIL`` line with the
measured quantities before asserting, so the verdicts survive in captured
output even when a criterion legitimately fails.
"""

import math
import time

import numpy as np
import pytest

from collapse_spectra import harness, kernels, meridian
from collapse_spectra.coeffs import (compute_coefficients, ellipsoid_profile,
                                     lambda1_general, lambda1_radial_reduced,
                                     mu_eigenvalues)
from collapse_spectra.ellipse import verify_expansion
from collapse_spectra.limit_spectrum import eigenpair, group_degenerate
from collapse_spectra.quadrature import integrate_adaptive
from collapse_spectra.specfun import bessel_zero, elliptic_E

# Reference constants (frozen at full precision; reports print them
# truncated to four decimals: 5.7831, 3.3900, 11.5664, 6.7799, ...).
J01_SQ = 5.78318596294678452118
JP11_SQ = 3.38995771667188872686
L1_DIRICHLET = -6.08710830044022195
L1_NEUMANN = -1.85551565486709124


def _verdict(n, ok, detail):
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'} {detail}")


def test_criterion_1_limit_eigenvalues():
    t0 = time.perf_counter()
    lam_d = eigenpair("dirichlet", 0, 1).lam
    lam_n = eigenpair("neumann", 1, 1).lam
    elapsed = time.perf_counter() - t0
    err_d = abs(lam_d - J01_SQ)
    err_n = abs(lam_n - JP11_SQ)
    ok = err_d < 5e-5 and err_n < 5e-5 and elapsed < 1.0
    _verdict(1, ok, f"dirichlet {lam_d:.6f} (err {err_d:.2e}), "
                    f"neumann {lam_n:.6f} (err {err_n:.2e}), "
                    f"{elapsed:.3f}s")
    assert err_d < 5e-5
    assert err_n < 5e-5
    assert elapsed < 1.0


def test_criterion_2_lambda0_matrices():
    t0 = time.perf_counter()
    prof = ellipsoid_profile()
    cm_d = compute_coefficients(group_degenerate(J01_SQ), prof)
    cm_n = compute_coefficients(group_degenerate(JP11_SQ), prof)
    elapsed = time.perf_counter() - t0
    l0d = cm_d.lambda0
    l0n = cm_n.lambda0
    err_d = abs(l0d[0, 0] - 11.5664)
    err_n = max(abs(l0n[0, 0] - 6.7799), abs(l0n[1, 1] - 6.7799))
    off = max(abs(l0n[0, 1]), abs(l0n[1, 0]))
    ok = err_d < 1e-3 and err_n < 1e-3 and off <= 1e-8 and elapsed < 1.0
    _verdict(2, ok, f"L0 dirichlet {l0d[0, 0]:.6f}, neumann diag "
                    f"({l0n[0, 0]:.6f}, {l0n[1, 1]:.6f}), off {off:.1e}, "
                    f"{elapsed:.3f}s")
    assert err_d < 1e-3
    assert err_n < 1e-3
    assert off <= 1e-8
    assert elapsed < 1.0


def test_criterion_3_lambda1_reduced():
    t0 = time.perf_counter()
    prof = ellipsoid_profile()
    v_d = lambda1_radial_reduced(eigenpair("dirichlet", 0, 1), prof)
    v_n = lambda1_radial_reduced(eigenpair("neumann", 1, 1), prof)
    elapsed = time.perf_counter() - t0
    err_d = abs(v_d - (-6.0871))
    err_n = abs(v_n - (-1.8555))
    ok = err_d < 2e-3 and err_n < 2e-3 and elapsed < 5.0
    _verdict(3, ok, f"L1 dirichlet {v_d:.6f} (err {err_d:.1e}), "
                    f"neumann {v_n:.6f} (err {err_n:.1e}), {elapsed:.3f}s")
    assert err_d < 2e-3
    assert err_n < 2e-3
    assert elapsed < 5.0


def test_criterion_4_general_route_matches_reduced():
    t0 = time.perf_counter()
    prof = ellipsoid_profile()
    gd = group_degenerate(J01_SQ)
    gn = group_degenerate(JP11_SQ)
    general_d = lambda1_general(gd, prof)[0, 0]
    general_n = lambda1_general(gn, prof)
    reduced_d = lambda1_radial_reduced(gd.members[0], prof)
    reduced_n = lambda1_radial_reduced(gn.members[0], prof)
    elapsed = time.perf_counter() - t0
    err_d = abs(general_d - reduced_d)
    err_n = max(abs(general_n[0, 0] - reduced_n),
                abs(general_n[1, 1] - reduced_n))
    ok = err_d <= 1e-3 and err_n <= 1e-3 and elapsed < 30.0
    _verdict(4, ok, f"|general - reduced| dirichlet {err_d:.2e}, "
                    f"neumann {err_n:.2e}, {elapsed:.2f}s")
    assert err_d <= 1e-3
    assert err_n <= 1e-3
    assert elapsed < 30.0


def test_criterion_5_ellipse_closed_form():
    t0 = time.perf_counter()
    rows = verify_expansion(1, [0.1, 0.05, 0.025])
    elapsed = time.perf_counter() - t0
    scaled = [abs(r.residual_over_eps_sq) for r in rows]
    monotone = all(a > b for a, b in zip(scaled, scaled[1:]))
    halved = all(b <= 0.5 * a for a, b in zip(scaled, scaled[1:]))
    ok = monotone and halved and elapsed < 0.1
    _verdict(5, ok, "scaled residuals "
                    + " -> ".join(f"{s:.4e}" for s in scaled)
                    + f", {elapsed:.4f}s")
    assert monotone
    assert halved
    assert elapsed < 0.1


def test_criterion_6_sphere_and_convergence_order():
    t0 = time.perf_counter()
    spec = meridian.spectrum(1.0, 2, 3, N=4000)
    lams = sorted(e.lam for e in spec.entries)
    targets = [0.0, 2.0, 2.0, 6.0, 6.0, 6.0]
    err = max(abs(a - b) for a, b in zip(lams[:6], targets))
    mult = {}
    for e in spec.entries:
        mult[round(e.lam)] = mult.get(round(e.lam), 0) + e.multiplicity
    study = harness.convergence_study(1.0, 0, (400, 800, 1600))
    elapsed = time.perf_counter() - t0
    orders_ok = all(1.8 <= o <= 2.2 for o in study.orders)
    ok = (err < 1e-3 and mult[0] == 1 and mult[2] == 3 and mult[6] == 5
          and orders_ok and elapsed < 10.0)
    _verdict(6, ok, f"sphere err {err:.1e}, multiplicities "
                    f"{{0: {mult[0]}, 2: {mult[2]}, 6: {mult[6]}}}, orders "
                    + ", ".join(f"{o:.2f}" for o in study.orders)
                    + f", {elapsed:.2f}s")
    assert err < 1e-3
    assert (mult[0], mult[2], mult[6]) == (1, 3, 5)
    assert orders_ok
    assert elapsed < 10.0


def test_criterion_7_end_to_end_asymptotics():
    """Fit direct eigenvalues against the predicted (c1, c2) diagonals.

    Passing requires the fitted eps^2 ln(eps) coefficient within 3% of
    the predicted c1 = L0_kk = 2 lam (and c2 within 15% of L1_kk), or the
    fallback decay of |lam_direct - predict| / eps^2 by >= 1.5 per
    halving.  Measured flattened-ellipsoid spectra follow the rate lam,
    not 2 lam, so both gates fail; the verdict line and the assertion
    report that outcome as measured.
    """
    t0 = time.perf_counter()
    fits = [harness.validate_eigenvalue("dirichlet", 0, 1),
            harness.validate_eigenvalue("neumann", 1, 1)]
    elapsed = time.perf_counter() - t0
    ok = all(f.passed for f in fits) and elapsed < 600.0
    detail = []
    for f in fits:
        detail.append(
            f"{f.bc.value}: c1 {f.c1_fit:.4f} vs {f.c1_predicted:.4f} "
            f"(rel {f.c1_rel_error:.3f}), c2 {f.c2_fit:.4f} vs "
            f"{f.c2_predicted:.4f} (rel {f.c2_rel_error:.3f}), "
            f"fallback ratios "
            + "/".join(f"{r:.2f}" for r in f.residual_ratios))
    _verdict(7, ok, "; ".join(detail) + f", {elapsed:.2f}s")
    assert elapsed < 600.0
    for f in fits:
        assert f.passed, (
            f"{f.bc.value} fit: c1 {f.c1_fit:.6f} is "
            f"{100 * f.c1_rel_error:.1f}% from predicted {f.c1_predicted:.6f}"
            f" and prediction residuals do not decay "
            f"(ratios {[round(r, 3) for r in f.residual_ratios]})")


def test_criterion_8_property_suites():
    t0 = time.perf_counter()

    # Bessel-zero interlacing, nu <= 5, k <= 10.
    interlace_ok = True
    for nu in range(6):
        rows = [bessel_zero(nu, k).location for k in range(1, 11)]
        rows_up = [bessel_zero(nu + 1, k).location for k in range(1, 11)]
        for k in range(10):
            if not rows[k] < rows_up[k]:
                interlace_ok = False
            if k + 1 < 10 and not rows_up[k] < rows[k + 1]:
                interlace_ok = False

    # E(m): AGM against adaptive quadrature on 100 random parameters.
    rng = np.random.default_rng(20240817)
    e_err = 0.0
    for m in rng.uniform(0.0, 0.999, 100):
        quad = integrate_adaptive(
            lambda th: math.sqrt(1.0 - m * math.sin(th) ** 2),
            0.0, math.pi / 2.0, tol=1e-13)
        e_err = max(e_err, abs(elliptic_E(float(m)) - quad.value))
    agm_ok = e_err <= 1e-11

    # Symmetry of both coefficient matrices on all three leading groups.
    prof = ellipsoid_profile()
    sym_defect = 0.0
    groups = [group_degenerate(J01_SQ), group_degenerate(JP11_SQ),
              group_degenerate(3.8317059702075123 ** 2)]
    mats = []
    for g in groups:
        cm = compute_coefficients(g, prof)
        mats.append(cm)
        for mat in (cm.lambda0, cm.lambda1):
            sym_defect = max(sym_defect, float(np.max(np.abs(mat - mat.T))))
    sym_ok = sym_defect <= 1e-10

    # Sturm-count oracle equivalence on random tridiagonal instances.
    sturm_ok = True
    for trial in range(25):
        n = int(rng.integers(1, 51))
        d = np.ascontiguousarray(rng.uniform(-3.0, 3.0, n))
        e = np.ascontiguousarray(rng.uniform(-2.0, 2.0, max(n - 1, 0)))
        dense = np.diag(d)
        if n > 1:
            dense += np.diag(e, 1) + np.diag(e, -1)
        vals = np.linalg.eigvalsh(dense)
        e2 = np.ascontiguousarray(e * e)
        for shift in np.linspace(vals[0] - 0.5, vals[-1] + 0.5, 9):
            if np.min(np.abs(vals - shift)) < 1e-9:
                continue
            want = int(np.sum(vals < shift))
            if kernels.sturm_count(d, e2, float(shift), 1e-300) != want:
                sturm_ok = False

    # Weyl bound: mu_k(eps) within ||L1||_2 / |ln eps| of eig_k(L0).
    weyl_ok = True
    for cm in mats:
        eig0 = np.sort(np.linalg.eigvalsh(cm.lambda0))
        bound = float(np.linalg.norm(cm.lambda1, 2))
        for eps in (0.1, 0.01):
            mus = mu_eigenvalues(cm.lambda0, cm.lambda1, eps)
            gap = bound / abs(math.log(eps))
            for mu, e0 in zip(mus, eig0):
                if abs(mu - e0) > gap + 1e-12:
                    weyl_ok = False

    elapsed = time.perf_counter() - t0
    ok = (interlace_ok and agm_ok and sym_ok and sturm_ok and weyl_ok
          and elapsed < 30.0)
    _verdict(8, ok, f"interlacing {interlace_ok}, E(m) err {e_err:.1e}, "
                    f"symmetry defect {sym_defect:.1e}, sturm {sturm_ok}, "
                    f"weyl {weyl_ok}, {elapsed:.2f}s")
    assert interlace_ok
    assert agm_ok
    assert sym_ok
    assert sturm_ok
    assert weyl_ok
    assert elapsed < 30.0
