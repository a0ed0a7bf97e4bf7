"""Adaptive Gauss-Kronrod quadrature (G7/K15 pair, interval bisection).

Endpoint singularities of inverse-square-root type are handled only when
the caller declares them through ``transform``; there is no automatic
singularity detection.
"""

import heapq
import math
from dataclasses import dataclass

from .errors import ConfigError, NonConvergence, NonFinite

# 15-point Kronrod abscissae (positive half) and weights, with the embedded
# 7-point Gauss weights, to full double precision.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with an a-posteriori error estimate."""

    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.abs_error_estimate < 0 or self.evaluations < 1:
            raise ConfigError("malformed quadrature result")


def _eval(f, x):
    y = float(f(x))
    if not math.isfinite(y):
        raise NonFinite(f"integrand returned {y!r} at x={x!r}")
    return y


def _gk15(f, a, b):
    """One G7/K15 panel on [a, b]; returns (value, error, nevals)."""
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)

    fc = _eval(f, centr)
    resg = fc * _WG[3]
    resk = fc * _WGK[7]
    resabs = abs(resk)
    fv = [0.0] * 7
    for j in range(7):
        absc = hlgth * _XGK[j]
        f1 = _eval(f, centr - absc)
        f2 = _eval(f, centr + absc)
        fv[j] = (f1, f2)
        fsum = f1 + f2
        if j % 2 == 1:  # Gauss points sit at the odd Kronrod indices here
            resg += _WG[(j - 1) // 2] * fsum
        resk += _WGK[j] * fsum
        resabs += _WGK[j] * (abs(f1) + abs(f2))

    reskh = resk * 0.5
    resasc = _WGK[7] * abs(fc - reskh)
    for j in range(7):
        f1, f2 = fv[j]
        resasc += _WGK[j] * (abs(f1 - reskh) + abs(f2 - reskh))

    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * min(1.0, (200.0 * abserr / resasc) ** 1.5)
    if resabs > 2.2250738585072014e-308 / (50.0 * _EPS):
        abserr = max(_EPS * 50.0 * resabs, abserr)
    return result, abserr, 15


def integrate_adaptive(f, a, b, tol=1e-10, rel_tol=0.0, transform=None,
                       max_intervals=4096):
    """Integrate ``f`` over [a, b] adaptively to absolute tolerance ``tol``.

    ``transform`` declares an integrable endpoint singularity:
    ``"sqrt_right"`` applies r = b - u^2 (for 1/sqrt(b - r) behaviour at b),
    ``"sqrt_left"`` applies r = a + u^2.  The transformed integrand is
    smooth for inverse-square-root singularities, so no node is ever placed
    at the singular endpoint.
    """
    if not (a < b):
        raise ConfigError(f"integration bounds must satisfy a < b, got [{a}, {b}]")
    if tol <= 0:
        raise ConfigError("tol must be positive")

    if transform == "sqrt_right":
        g = f
        b0 = b
        f = lambda u: 2.0 * u * g(b0 - u * u)
        a, b = 0.0, math.sqrt(b - a)
    elif transform == "sqrt_left":
        g = f
        a0 = a
        f = lambda u: 2.0 * u * g(a0 + u * u)
        a, b = 0.0, math.sqrt(b - a)
    elif transform is not None:
        raise ConfigError(f"unknown transform {transform!r}")

    val, err, n = _gk15(f, a, b)
    evals = n
    # Max-heap on the error estimate; the counter keeps ordering deterministic.
    heap = [(-err, 0, a, b, val, err)]
    seq = 1
    total_val = val
    total_err = err

    while total_err > max(tol, rel_tol * abs(total_val)):
        if len(heap) >= max_intervals:
            raise NonConvergence(
                f"quadrature error {total_err:.3e} above tolerance after "
                f"{len(heap)} intervals")
        _, _, lo, hi, v_old, e_old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # Interval at floating-point resolution; keep its estimate.
            heapq.heappush(heap, (0.0, seq, lo, hi, v_old, e_old))
            seq += 1
            if all(item[0] == 0.0 for item in heap):
                break
            continue
        v1, e1, n1 = _gk15(f, lo, mid)
        v2, e2, n2 = _gk15(f, mid, hi)
        evals += n1 + n2
        total_val += v1 + v2 - v_old
        total_err += e1 + e2 - e_old
        heapq.heappush(heap, (-e1, seq, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, seq + 1, mid, hi, v2, e2))
        seq += 2

    # Re-sum left to right for a deterministic, accurate total.
    pieces = sorted((item[2], item[4], item[5]) for item in heap)
    value = math.fsum(p[1] for p in pieces)
    error = math.fsum(p[2] for p in pieces)
    return QuadratureResult(value=value, abs_error_estimate=error,
                            evaluations=evals)
