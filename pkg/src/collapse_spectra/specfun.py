"""Special functions: complete elliptic integral E, integer-order Bessel J,
and zeros of J and J'.

Conventions that matter:

* ``elliptic_E`` takes the PARAMETER m, not the modulus;
  E(m) = integral over [0, pi/2] of sqrt(1 - m sin^2 t) dt.  A flattened
  ellipse with aspect ratio eps enters as E(1 - eps^2).
* ``bessel_zero(nu, k, ZeroKind.J_PRIME)`` counts positive zeros only, so
  for nu = 0 the first zero of J0' is 3.8317... (the stationary point at
  x = 0 is excluded; the constant mode is bookkept by the spectrum layer).
"""

import math
import threading
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NonConvergence

_MAX_ORDER = 50
_MAX_INDEX = 100


def elliptic_E(m):
    """Complete elliptic integral of the second kind, parameter convention.

    Arithmetic-geometric-mean iteration: with c_n = (a_{n-1} - b_{n-1})/2,
    E = K * (1 - sum 2^{n-1} c_n^2) and K = pi / (2 agm(1, sqrt(1-m))).
    """
    m = float(m)
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"elliptic_E parameter m={m!r} outside [0, 1]")
    if m == 0.0:
        return math.pi / 2.0
    if m == 1.0:
        return 1.0
    a = 1.0
    b = math.sqrt(1.0 - m)
    csum = 0.5 * m  # 2^{-1} c_0^2 with c_0^2 = m
    p = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        p *= 2.0
        csum += p * c * c
        # Stop at the rounding floor c ~ eps * a: past it c never shrinks
        # further, while the 2^n weight would amplify the junk terms.
        if c <= 2.220446049250313e-16 * a:
            break
    return math.pi / (2.0 * a) * (1.0 - csum)


def _check_order(nu):
    if not isinstance(nu, (int,)) or isinstance(nu, bool):
        raise DomainError(f"Bessel order must be an integer, got {nu!r}")
    if not 0 <= nu <= _MAX_ORDER:
        raise DomainError(f"Bessel order {nu} outside [0, {_MAX_ORDER}]")


def _series_j(nu, x):
    """Ascending power series; precision-safe for x < 12 or x < 0.75 nu."""
    half = 0.5 * x
    term = 1.0
    for i in range(1, nu + 1):
        term *= half / i
    total = term
    peak = abs(term)
    q = -half * half
    for s in range(1, 200):
        term *= q / (s * (nu + s))
        total += term
        peak = max(peak, abs(total))
        if abs(term) <= 1e-18 * peak + 1e-300:
            return total
    return total


def _miller_j(nu, x):
    """Backward-recurrence evaluation normalized by J0 + 2 J2 + 2 J4 + ... = 1."""
    top = max(nu, int(x)) + 44 + int(1.5 * math.sqrt(max(nu, x)))
    if top % 2 == 1:
        top += 1
    jp = 0.0
    jc = 1e-30
    norm = 0.0
    out = 0.0
    for k in range(top, 0, -1):
        jm = (2.0 * k / x) * jc - jp
        jp, jc = jc, jm
        # jc now approximates J_{k-1}
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            norm *= 1e-250
            out *= 1e-250
        if k - 1 == nu:
            out = jc
        if (k - 1) % 2 == 0:
            norm += jc if k - 1 == 0 else 2.0 * jc
    return out / norm


def bessel_j(nu, x):
    """J_nu(x) for integer nu in [0, 50] and x >= 0.

    Power series below the switchover, backward recurrence with the
    even-order normalization sum above it.  The recurrence also takes over
    inside the nominal series window wherever alternating-series
    cancellation would break the absolute error target.
    """
    _check_order(nu)
    x = float(x)
    if x < 0.0:
        raise DomainError(f"Bessel argument x={x!r} must be nonnegative")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x < 12.0 or x < 0.75 * nu:
        return _series_j(nu, x)
    return _miller_j(nu, x)


def bessel_j_deriv(nu, x):
    """d/dx J_nu(x), via J_nu' = J_{nu-1} - (nu/x) J_nu (and J0' = -J1)."""
    _check_order(nu)
    x = float(x)
    if x < 0.0:
        raise DomainError(f"Bessel argument x={x!r} must be nonnegative")
    if nu == 0:
        return -bessel_j(1, x)
    if x == 0.0:
        return 0.5 if nu == 1 else 0.0
    return bessel_j(nu - 1, x) - (nu / x) * bessel_j(nu, x)


def _bessel_j_second_deriv(nu, x):
    # From the Bessel ODE: J'' = -J'/x - (1 - nu^2/x^2) J.
    return -bessel_j_deriv(nu, x) / x - (1.0 - (nu / x) ** 2) * bessel_j(nu, x)


class ZeroKind(Enum):
    J = "zero_of_J"
    J_PRIME = "zero_of_J_prime"


@dataclass(frozen=True)
class BesselZero:
    order: int
    index: int
    kind: ZeroKind
    location: float


_zero_cache = {}
_zero_lock = threading.Lock()


def _target_fn(nu, kind):
    if kind is ZeroKind.J:
        return lambda x: bessel_j(nu, x)
    return lambda x: bessel_j_deriv(nu, x)


def _mcmahon_guess(nu, k, kind):
    """Large-k McMahon approximation; used to size scan windows."""
    mu = 4.0 * nu * nu
    if kind is ZeroKind.J:
        beta = (k + 0.5 * nu - 0.25) * math.pi
        return beta - (mu - 1.0) / (8.0 * beta)
    beta = (k + 0.5 * nu - 0.75) * math.pi
    return beta - (mu + 3.0) / (8.0 * beta)


def _refine_zero(f, lo, hi, nu, kind):
    """Bisection to a narrow bracket, then Newton; returns the root."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NonConvergence("lost the sign-change bracket for a Bessel zero")
    for _ in range(60):
        if hi - lo <= 1e-3:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    x = 0.5 * (lo + hi)
    if kind is ZeroKind.J:
        dfn = lambda t: bessel_j_deriv(nu, t)
    else:
        dfn = lambda t: _bessel_j_second_deriv(nu, t)
    for _ in range(60):
        fx = f(x)
        dx = fx / dfn(x)
        x_new = x - dx
        if not lo <= x_new <= hi:
            # Newton left the bracket; fall back to a bisection step.
            if flo * fx < 0.0:
                hi = x
            else:
                lo, flo = x, fx
            x_new = 0.5 * (lo + hi)
        x = x_new
        if abs(dx) <= 1e-14 * (1.0 + x):
            break
    if abs(f(x)) > 1e-11:
        raise NonConvergence(f"Bessel zero refinement stalled at x={x!r}")
    return x


def _extend_zero_cache(nu, kind, upto):
    zeros = _zero_cache.setdefault((nu, kind), [])
    f = _target_fn(nu, kind)
    step = 0.5
    while len(zeros) < upto:
        k_next = len(zeros) + 1
        if zeros:
            lo = zeros[-1] + 0.25
        else:
            # All positive zeros of J_nu and J_nu' exceed nu.
            lo = max(nu, 1e-3)
        ceiling = max(_mcmahon_guess(nu, k_next, kind) + 4.0, lo + 16.0)
        fl = f(lo)
        x = lo
        found = None
        while x < ceiling:
            x_next = min(x + step, ceiling)
            fr = f(x_next)
            if fl == 0.0:
                found = _refine_zero(f, max(x - step, 1e-12), x_next, nu, kind)
                break
            if fl * fr < 0.0:
                found = _refine_zero(f, x, x_next, nu, kind)
                break
            x, fl = x_next, fr
        if found is None:
            raise NonConvergence(
                f"no sign change found scanning for zero {k_next} of "
                f"{kind.value} at order {nu}")
        zeros.append(found)


def bessel_zero(nu, k, kind=ZeroKind.J):
    """The k-th positive zero of J_nu (or of J_nu')."""
    _check_order(nu)
    if isinstance(kind, str):
        kind = ZeroKind(kind)
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= _MAX_INDEX:
        raise DomainError(f"zero index k={k!r} outside [1, {_MAX_INDEX}]")
    with _zero_lock:
        zeros = _zero_cache.get((nu, kind), [])
        if len(zeros) < k:
            _extend_zero_cache(nu, kind, k)
            zeros = _zero_cache[(nu, kind)]
        loc = zeros[k - 1]
    return BesselZero(order=nu, index=k, kind=kind, location=loc)
