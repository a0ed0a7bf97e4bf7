"""Spectrum and eigenfunctions of the limit operator on the double-sided
unit disk.

The limit spectrum is the union of the Dirichlet and Neumann disk spectra;
an eigenfunction is a pair (psi, -psi) for Dirichlet members and
(psi, psi) for Neumann members, normalized in the double-sided norm
2 * integral of psi^2 over the disk = 1.  Boundary traces use the inward
normal coordinate tau = 1 - r, so Psi1 = -d(psi)/dr at r = 1.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import EmptyGroup, InvalidMode
from .specfun import ZeroKind, bessel_j, bessel_j_deriv, bessel_zero

_TWO_PI = 2.0 * math.pi


class BoundaryCondition(Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class AngularFactor(Enum):
    CONSTANT = "constant"
    COS = "cos"
    SIN = "sin"


@dataclass(frozen=True)
class DiskEigenpair:
    """One separated eigenfunction psi = c * R(kappa r) * angular(theta)."""

    bc: BoundaryCondition
    nu: int
    k: int
    kappa: float
    lam: float
    angular_factor: AngularFactor
    radial_norm_const: float

    @property
    def side_sign(self):
        """Sign of the lower-side copy: psi_- = side_sign * psi_+."""
        return -1.0 if self.bc is BoundaryCondition.DIRICHLET else 1.0


@dataclass(frozen=True)
class Traces:
    """Boundary data of the expansion psi(tau) = Psi0 + Psi1 * tau + O(tau^2)."""

    psi0_amplitude: float
    psi1_amplitude: float
    angular_factor: AngularFactor
    nu: int


@dataclass(frozen=True)
class LimitEigenvalue:
    lam: float
    bc: BoundaryCondition
    nu: int
    k: int
    kappa: float
    multiplicity: int


@dataclass(frozen=True)
class EigenGroup:
    """A degenerate limit eigenvalue with its orthonormal members."""

    lam: float
    members: tuple
    traces: tuple
    mixed: bool
    rotation: tuple = None  # optional basis rotation from diagonalization

    @property
    def multiplicity(self):
        return len(self.members)


def _coerce_bc(bc):
    if isinstance(bc, BoundaryCondition):
        return bc
    try:
        return BoundaryCondition(str(bc).lower())
    except ValueError:
        raise InvalidMode(f"unknown boundary condition {bc!r}") from None


def _kappa_for(bc, nu, k):
    """Zero location for the (bc, nu, k) radial mode; 0.0 is the constant mode."""
    if bc is BoundaryCondition.DIRICHLET:
        return bessel_zero(nu, k, ZeroKind.J).location
    if nu == 0:
        if k == 1:
            return 0.0
        return bessel_zero(0, k - 1, ZeroKind.J_PRIME).location
    return bessel_zero(nu, k, ZeroKind.J_PRIME).location


def eigenpair(bc, nu, k, angular_factor=None):
    """Construct the normalized (bc, nu, k) eigenpair.

    For nu = 0 the angular factor is the constant; for nu >= 1 it defaults
    to cos(nu theta), with sin(nu theta) selecting the partner member.
    Neumann radial indexing starts at the constant mode: (neumann, 0, 1)
    is kappa = 0, and (neumann, 0, k) for k >= 2 uses the (k-1)-th zero of
    J0'.
    """
    bc = _coerce_bc(bc)
    if not isinstance(nu, int) or isinstance(nu, bool) or nu < 0:
        raise InvalidMode(f"angular mode nu={nu!r} must be a nonnegative integer")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidMode(f"radial index k={k!r} must be a positive integer")
    if angular_factor is None:
        angular_factor = AngularFactor.CONSTANT if nu == 0 else AngularFactor.COS
    if nu == 0 and angular_factor is not AngularFactor.CONSTANT:
        raise InvalidMode("nu = 0 pairs carry the constant angular factor")
    if nu >= 1 and angular_factor is AngularFactor.CONSTANT:
        raise InvalidMode("nu >= 1 pairs need a cos or sin angular factor")

    kappa = _kappa_for(bc, nu, k)
    lam = kappa * kappa
    ang_norm_sq = _TWO_PI if nu == 0 else math.pi

    if kappa == 0.0:
        # Constant Neumann mode: 2 * c^2 * area(disk) = 1.
        c = 1.0 / math.sqrt(_TWO_PI)
    elif bc is BoundaryCondition.DIRICHLET:
        # integral of J_nu(kappa r)^2 r dr over [0,1] = J_nu'(kappa)^2 / 2;
        # the signed J_nu' in the constant reproduces the classical sign
        # convention -J_0(kappa r)/(sqrt(2 pi) J_1(kappa)) at nu = 0.
        c = 1.0 / (math.sqrt(ang_norm_sq) * bessel_j_deriv(nu, kappa))
    else:
        radial_sq = (1.0 - (nu / kappa) ** 2) * bessel_j(nu, kappa) ** 2 / 2.0
        c = 1.0 / math.sqrt(2.0 * ang_norm_sq * radial_sq)
    return DiskEigenpair(bc=bc, nu=nu, k=k, kappa=kappa, lam=lam,
                         angular_factor=angular_factor, radial_norm_const=c)


def radial_eval(pair, r):
    """(R(r), R'(r)) of the normalized radial part at radius r in [0, 1]."""
    c = pair.radial_norm_const
    if pair.kappa == 0.0:
        return c, 0.0
    kr = pair.kappa * r
    return (c * bessel_j(pair.nu, kr),
            c * pair.kappa * bessel_j_deriv(pair.nu, kr))


def traces(pair):
    """Boundary traces; exact zeros are set exactly per boundary condition."""
    if pair.bc is BoundaryCondition.DIRICHLET:
        _, dr = radial_eval(pair, 1.0)
        return Traces(psi0_amplitude=0.0, psi1_amplitude=-dr,
                      angular_factor=pair.angular_factor, nu=pair.nu)
    val, _ = radial_eval(pair, 1.0)
    return Traces(psi0_amplitude=val, psi1_amplitude=0.0,
                  angular_factor=pair.angular_factor, nu=pair.nu)


def limit_eigenvalues(count):
    """The smallest `count` limit eigenvalue families, ascending.

    Each row is one (bc, nu, k) family; rows with nu >= 1 carry geometric
    multiplicity 2 (cos and sin partners).
    """
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise InvalidMode(f"count={count!r} must be a positive integer")
    if count > 500:
        raise InvalidMode("count is capped at 500")
    cap = 50.0 + 6.0 * count
    while True:
        rows = _families_below(cap)
        if len(rows) >= count:
            return rows[:count]
        cap *= 2.0


def _families_below(cap):
    rows = [LimitEigenvalue(lam=0.0, bc=BoundaryCondition.NEUMANN, nu=0, k=1,
                            kappa=0.0, multiplicity=1)]
    kappa_cap = math.sqrt(cap)
    nu = 0
    while True:
        first = bessel_zero(nu, 1, ZeroKind.J_PRIME).location
        if first > kappa_cap and nu > 0:
            break
        mult = 1 if nu == 0 else 2
        k = 1
        while True:
            z = bessel_zero(nu, k, ZeroKind.J_PRIME).location
            if z > kappa_cap:
                break
            neumann_k = k + 1 if nu == 0 else k
            rows.append(LimitEigenvalue(lam=z * z, bc=BoundaryCondition.NEUMANN,
                                        nu=nu, k=neumann_k, kappa=z,
                                        multiplicity=mult))
            k += 1
        k = 1
        while True:
            z = bessel_zero(nu, k, ZeroKind.J).location
            if z > kappa_cap:
                break
            rows.append(LimitEigenvalue(lam=z * z, bc=BoundaryCondition.DIRICHLET,
                                        nu=nu, k=k, kappa=z, multiplicity=mult))
            k += 1
        nu += 1
        if nu > kappa_cap + 1:
            break
    rows.sort(key=lambda r: (r.lam, r.bc.value, r.nu))
    return rows


def group_degenerate(lam_target, tol=1e-9):
    """All eigenpairs with |lam - lam_target| <= tol * (1 + |lam_target|).

    Families with nu >= 1 contribute both the cos and the sin member.  A
    group containing both boundary conditions is flagged as mixed rather
    than silently merged apart.
    """
    lam_target = float(lam_target)
    window = tol * (1.0 + abs(lam_target))
    rows = _families_below(lam_target + window + 10.0)
    hits = [r for r in rows if abs(r.lam - lam_target) <= window]
    if not hits:
        raise EmptyGroup(f"no limit eigenvalue within {window:.3e} of {lam_target!r}")
    members = []
    for row in hits:
        if row.nu == 0:
            members.append(eigenpair(row.bc, row.nu, row.k))
        else:
            members.append(eigenpair(row.bc, row.nu, row.k, AngularFactor.COS))
            members.append(eigenpair(row.bc, row.nu, row.k, AngularFactor.SIN))
    lam = math.fsum(p.lam for p in members) / len(members)
    mixed = len({p.bc for p in members}) > 1
    return EigenGroup(lam=lam, members=tuple(members),
                      traces=tuple(traces(p) for p in members), mixed=mixed)


def with_rotation(group, rotation):
    """Copy of the group carrying an orthogonal basis rotation."""
    rot = tuple(tuple(float(x) for x in row) for row in rotation)
    return replace(group, rotation=rot)
