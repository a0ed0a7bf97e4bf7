"""Limit spectrum of the double-sided unit disk.

Reference eigenvalues are squared Bessel zeros; normalization and trace
values are cross-checked by quadrature on the radial profiles.
"""

import math

import numpy as np
import pytest

from collapse_spectra.errors import EmptyGroup, InvalidMode
from collapse_spectra.limit_spectrum import (AngularFactor, BoundaryCondition,
                                             eigenpair, group_degenerate,
                                             limit_eigenvalues, radial_eval,
                                             traces, with_rotation)
from collapse_spectra.quadrature import integrate_adaptive

# Squared zeros of J_0 and J_1' to 20 digits, the two headline eigenvalues.
J01_SQ = 5.78318596294678452118
JP11_SQ = 3.38995771667188872686


def test_headline_eigenvalues():
    d = eigenpair("dirichlet", 0, 1)
    n = eigenpair("neumann", 1, 1)
    assert abs(d.lam - J01_SQ) < 5e-14
    assert abs(n.lam - JP11_SQ) < 5e-14


def test_limit_listing_smallest_families():
    rows = limit_eigenvalues(8)
    got = [(round(r.lam, 6), r.bc.value, r.nu, r.k, r.multiplicity)
           for r in rows]
    assert got == [
        (0.0, "neumann", 0, 1, 1),
        (3.389958, "neumann", 1, 1, 2),
        (5.783186, "dirichlet", 0, 1, 1),
        (9.328363, "neumann", 2, 1, 2),
        (14.681971, "neumann", 0, 2, 1),
        (14.681971, "dirichlet", 1, 1, 2),
        (17.649989, "neumann", 3, 1, 2),
        (26.374616, "dirichlet", 2, 1, 2),
    ]


def test_limit_listing_is_ascending_union():
    rows = limit_eigenvalues(40)
    lams = [r.lam for r in rows]
    assert lams == sorted(lams)
    assert len({(r.bc, r.nu, r.k) for r in rows}) == 40
    assert any(r.bc is BoundaryCondition.DIRICHLET for r in rows)
    assert any(r.bc is BoundaryCondition.NEUMANN for r in rows)


@pytest.mark.parametrize("count", [0, -3, 501, 2.5])
def test_limit_listing_rejects_bad_count(count):
    with pytest.raises(InvalidMode):
        limit_eigenvalues(count)


class TestEigenpairs:
    def test_neumann_constant_mode(self):
        p = eigenpair("neumann", 0, 1)
        assert p.lam == 0.0 and p.kappa == 0.0
        val, deriv = radial_eval(p, 0.3)
        assert abs(val - 1.0 / math.sqrt(2.0 * math.pi)) < 1e-15
        assert deriv == 0.0

    def test_neumann_radial_indexing_shifts_past_constant(self):
        # (neumann, 0, 2) is the first nonconstant nu = 0 mode: j'_{0,1}.
        p = eigenpair("neumann", 0, 2)
        assert abs(p.kappa - 3.8317059702075123) < 1e-11

    @pytest.mark.parametrize("bc, nu, k", [
        ("dirichlet", 0, 1), ("dirichlet", 0, 3), ("dirichlet", 2, 1),
        ("neumann", 0, 2), ("neumann", 1, 1), ("neumann", 3, 2),
    ])
    def test_double_sided_normalization(self, bc, nu, k):
        """2 * integral over the disk of psi^2 equals 1."""
        p = eigenpair(bc, nu, k)
        ang = 2.0 * math.pi if nu == 0 else math.pi  # angular factor L2 norm
        radial = integrate_adaptive(
            lambda r: radial_eval(p, r)[0] ** 2 * r, 1e-14, 1.0,
            tol=1e-13).value
        assert abs(2.0 * ang * radial - 1.0) < 1e-9

    @pytest.mark.parametrize("bc, nu, k", [
        ("dirichlet", 1, 2), ("neumann", 2, 1),
    ])
    def test_radial_ode_residual(self, bc, nu, k):
        """R'' + R'/r + (lam - nu^2/r^2) R = 0, second derivative by stencil."""
        p = eigenpair(bc, nu, k)
        h = 1e-5
        for r in (0.31, 0.57, 0.83):
            up, _ = radial_eval(p, r + h)
            u0, du = radial_eval(p, r)
            um, _ = radial_eval(p, r - h)
            d2 = (up - 2.0 * u0 + um) / (h * h)
            res = d2 + du / r + (p.lam - (nu / r) ** 2) * u0
            assert abs(res) < 1e-5 * (1.0 + abs(p.lam))

    def test_derivative_consistent_with_values(self):
        p = eigenpair("dirichlet", 0, 2)
        h = 1e-6
        for r in (0.2, 0.6, 0.9):
            vp, _ = radial_eval(p, r + h)
            vm, _ = radial_eval(p, r - h)
            _, du = radial_eval(p, r)
            assert abs((vp - vm) / (2.0 * h) - du) < 1e-8

    def test_side_sign(self):
        assert eigenpair("dirichlet", 0, 1).side_sign == -1.0
        assert eigenpair("neumann", 1, 1).side_sign == 1.0

    def test_angular_factor_defaults_and_partner(self):
        assert eigenpair("neumann", 0, 1).angular_factor is AngularFactor.CONSTANT
        assert eigenpair("dirichlet", 2, 1).angular_factor is AngularFactor.COS
        partner = eigenpair("dirichlet", 2, 1, AngularFactor.SIN)
        assert partner.angular_factor is AngularFactor.SIN
        assert partner.lam == eigenpair("dirichlet", 2, 1).lam

    @pytest.mark.parametrize("bc, nu, k, ang", [
        ("robin", 0, 1, None),
        ("dirichlet", -1, 1, None),
        ("dirichlet", 0, 0, None),
        ("dirichlet", 0.5, 1, None),
        ("dirichlet", 0, 1, AngularFactor.COS),
        ("dirichlet", 1, 1, AngularFactor.CONSTANT),
    ])
    def test_rejects_invalid_modes(self, bc, nu, k, ang):
        with pytest.raises(InvalidMode):
            eigenpair(bc, nu, k, ang)


class TestTraces:
    def test_dirichlet_trace_values(self):
        """Psi0 = 0 and Psi1 = -kappa * c * J_nu'(kappa) for the inward normal."""
        p = eigenpair("dirichlet", 0, 1)
        t = traces(p)
        assert t.psi0_amplitude == 0.0
        # c = 1/(sqrt(2 pi) J_1(j01)) and J_0' = -J_1 collapse to kappa/sqrt(2 pi);
        # the inward-normal flip makes the stored amplitude negative.
        assert abs(t.psi1_amplitude - (-p.kappa / math.sqrt(2.0 * math.pi))) < 1e-12

    def test_neumann_trace_values(self):
        p = eigenpair("neumann", 1, 1)
        t = traces(p)
        assert t.psi1_amplitude == 0.0
        val, _ = radial_eval(p, 1.0)
        assert t.psi0_amplitude == val
        assert t.angular_factor is AngularFactor.COS

    def test_trace_matches_boundary_derivative(self):
        p = eigenpair("dirichlet", 1, 2)
        _, du = radial_eval(p, 1.0)
        assert traces(p).psi1_amplitude == -du


class TestGroups:
    def test_simple_dirichlet_group(self):
        g = group_degenerate(J01_SQ)
        assert g.multiplicity == 1
        assert not g.mixed
        assert g.members[0].bc is BoundaryCondition.DIRICHLET

    def test_neumann_doublet(self):
        g = group_degenerate(JP11_SQ)
        assert g.multiplicity == 2
        factors = {p.angular_factor for p in g.members}
        assert factors == {AngularFactor.COS, AngularFactor.SIN}
        assert not g.mixed

    def test_mixed_triple_at_shared_zero(self):
        # j_{1,1} = j'_{0,2} = 3.8317..., so the Dirichlet nu=1 doublet and
        # the Neumann (0, 2) mode share one eigenvalue.
        lam = 3.8317059702075123 ** 2
        g = group_degenerate(lam)
        assert g.multiplicity == 3
        assert g.mixed
        bcs = sorted(p.bc.value for p in g.members)
        assert bcs == ["dirichlet", "dirichlet", "neumann"]

    def test_group_traces_align_with_members(self):
        g = group_degenerate(JP11_SQ)
        for p, t in zip(g.members, g.traces):
            assert t.angular_factor is p.angular_factor
            assert t.nu == p.nu

    def test_no_group_at_spectral_gap(self):
        with pytest.raises(EmptyGroup):
            group_degenerate(4.0)

    def test_rotation_attaches(self):
        g = group_degenerate(JP11_SQ)
        rot = ((0.0, 1.0), (1.0, 0.0))
        g2 = with_rotation(g, np.array(rot))
        assert g2.rotation == rot
        assert g2.members == g.members
