"""Direct eigensolver for the closed flattened-ellipsoid surface.

Separation in the azimuthal angle reduces the Laplace-Beltrami operator to
the meridian Sturm-Liouville problems

    -(1/rho) (rho f')' + (m^2 / rho^2) f = lambda f,

one per Fourier mode m, posed in arclength s along the pole-to-pole
meridian with rho(s) the distance to the symmetry axis.  The staggered
flux-form discretization keeps the operator symmetric with respect to the
discrete measure rho ds and encodes pole regularity without explicit
boundary conditions: cell edges sit exactly on the poles where the flux
coefficient rho vanishes.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousPairing, ConfigError, DomainError, GridTooCoarse
from .limit_spectrum import BoundaryCondition
from .specfun import elliptic_E
from .tridiag import TridiagonalSystem, tridiag_eigen_smallest

DEFAULT_GRID_C = 20.0

# 5-point Gauss-Legendre rule on [-1, 1] for the arclength tables.
_GL5_X = np.array([
    -0.906179845938663992797626878299,
    -0.538469310105683091036314420700,
    0.0,
    0.538469310105683091036314420700,
    0.906179845938663992797626878299,
])
_GL5_W = np.array([
    0.236926885056189087514264040720,
    0.478628670499366468041291514836,
    0.568888888888888888888888888889,
    0.478628670499366468041291514836,
    0.236926885056189087514264040720,
])


@dataclass(frozen=True)
class MeridianGrid:
    """Uniform-arclength staggered grid on the pole-to-pole meridian."""

    eps: float
    azimuthal_mode: int
    N: int
    h: float
    total_arclength: float
    nodes: np.ndarray       # cell centers s_j = (j + 1/2) h
    rho: np.ndarray         # distance to axis at the nodes (> 0)
    rho_edges: np.ndarray   # at cell edges; exactly 0 at both poles


def _speed(t, eps):
    c = np.cos(t)
    s = np.sin(t)
    return np.sqrt(c * c + eps * eps * s * s)


def _segment_lengths(t_lo, t_hi, eps):
    """GL5 arclength of (sin t, eps cos t) over each [t_lo_i, t_hi_i]."""
    mid = 0.5 * (t_lo + t_hi)
    half = 0.5 * (t_hi - t_lo)
    acc = np.zeros_like(mid)
    for x, w in zip(_GL5_X, _GL5_W):
        acc += w * _speed(mid + x * half, eps)
    return acc * half


def _invert_arclength(targets, cum, t_edges, eps):
    """Solve s(t) = target for each target, via table lookup plus Newton."""
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1,
                  0, len(cum) - 2)
    t0 = t_edges[idx]
    s0 = cum[idx]
    t = t0 + (targets - s0) / _speed(t0, eps)
    for _ in range(3):
        ds = _segment_lengths(t0, t, eps)
        t = t - (s0 + ds - targets) / _speed(t, eps)
    return np.clip(t, 0.0, math.pi)


def default_grid_size(eps, grid_c=DEFAULT_GRID_C):
    """Smallest admissible even N under the resolution rule N >= C / eps."""
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"aspect ratio eps = {eps!r} outside (0, 1]")
    n = max(64, math.ceil(grid_c / eps))
    return n + (n % 2)


def build_grid(eps, m, N, grid_c=DEFAULT_GRID_C):
    """Uniform-arclength grid for Fourier mode m at aspect ratio eps.

    The meridian is the quarter-to-quarter curve (sin t, eps cos t),
    t in [0, pi]; its total arclength is 2 E(1 - eps^2).  The equatorial
    bending region has width ~ eps in arclength, whence the resolution
    rule N >= grid_c / eps.
    """
    eps = float(eps)
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"eps={eps!r} outside (0, 1]")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ConfigError(f"azimuthal mode m={m!r} must be a nonnegative integer")
    if not isinstance(N, int) or isinstance(N, bool) or N < 64:
        raise ConfigError(f"node count N={N!r} must be an integer >= 64")
    if N < grid_c / eps:
        raise GridTooCoarse(
            f"N={N} violates the resolution rule N >= {grid_c}/eps = "
            f"{grid_c / eps:.1f} at eps={eps}")

    L = 2.0 * elliptic_E(1.0 - eps * eps)
    n_cells = max(4 * N, 4096)
    t_edges = np.linspace(0.0, math.pi, n_cells + 1)
    seg = _segment_lengths(t_edges[:-1], t_edges[1:], eps)
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    cum *= L / cum[-1]

    h = L / N
    node_s = (np.arange(N) + 0.5) * h
    edge_s = np.arange(1, N) * h
    t_nodes = _invert_arclength(node_s, cum, t_edges, eps)
    t_inner_edges = _invert_arclength(edge_s, cum, t_edges, eps)
    rho = np.sin(t_nodes)
    rho_edges = np.concatenate(([0.0], np.sin(t_inner_edges), [0.0]))
    if not np.all(rho > 0.0):
        raise GridTooCoarse("grid nodes collapsed onto a pole")
    return MeridianGrid(eps=eps, azimuthal_mode=m, N=N, h=h,
                        total_arclength=L, nodes=node_s, rho=rho,
                        rho_edges=rho_edges)


def assemble(grid):
    """Flux-form discretization as a generalized tridiagonal system.

    Row j: [rho_e[j] (f_j - f_{j-1}) - rho_e[j+1] (f_{j+1} - f_j)] / h^2
    + (m^2 / rho_j) f_j = lambda rho_j f_j.  The zero flux coefficients at
    the poles make the constant vector an exact m = 0 null vector.
    """
    h2 = grid.h * grid.h
    re = grid.rho_edges
    m = grid.azimuthal_mode
    diag = (re[:-1] + re[1:]) / h2
    if m > 0:
        diag = diag + m * m / grid.rho
    off = -re[1:-1] / h2
    return TridiagonalSystem(diagonal=diag, off_diagonal=off,
                             mass_diagonal=grid.rho.copy())


@dataclass(frozen=True)
class SpectrumEntry:
    lam: float
    m: int
    index_in_mode: int
    parity: int          # +1 even about the equator, -1 odd
    multiplicity: int


@dataclass(frozen=True)
class MeridianSpectrum:
    eps: float
    entries: tuple
    grid_sizes: dict
    k_per_mode: int


def _mode_entries(eps, m, k_per_mode, N, grid_c):
    grid = build_grid(eps, m, N, grid_c=grid_c)
    sys = assemble(grid)
    pairs = tridiag_eigen_smallest(sys, min(k_per_mode, grid.N),
                                   want_vectors=True)
    entries = []
    for idx, (lam, vec) in enumerate(pairs):
        sym = float(np.linalg.norm(vec + vec[::-1]))
        asym = float(np.linalg.norm(vec - vec[::-1]))
        parity = 1 if sym >= asym else -1
        entries.append(SpectrumEntry(lam=lam, m=m, index_in_mode=idx,
                                     parity=parity,
                                     multiplicity=1 if m == 0 else 2))
    return entries


def _thread_budget(threads):
    if threads is None:
        env = os.environ.get("COLLAPSE_SPECTRA_THREADS", "")
        threads = int(env) if env.strip() else 1
    return max(1, int(threads))


def spectrum(eps, m_max, k_per_mode, N=None, grid_c=DEFAULT_GRID_C,
             threads=None):
    """Merged spectrum over azimuthal modes 0..m_max.

    Per-mode solves are independent; `threads` (or the
    COLLAPSE_SPECTRA_THREADS environment variable) caps how many run
    concurrently.  The merged listing is sorted by (lambda, m) and is
    deterministic regardless of scheduling.
    """
    if not isinstance(m_max, int) or isinstance(m_max, bool) or not 0 <= m_max <= 20:
        raise ConfigError(f"m_max={m_max!r} must be an integer in [0, 20]")
    if not isinstance(k_per_mode, int) or isinstance(k_per_mode, bool) \
            or not 1 <= k_per_mode <= 50:
        raise ConfigError(f"k_per_mode={k_per_mode!r} must be in [1, 50]")
    eps = float(eps)
    n_eff = N if N is not None else default_grid_size(eps, grid_c)
    modes = list(range(m_max + 1))
    budget = min(_thread_budget(threads), len(modes))
    if budget > 1:
        with ThreadPoolExecutor(max_workers=budget) as pool:
            per_mode = list(pool.map(
                lambda m: _mode_entries(eps, m, k_per_mode, n_eff, grid_c),
                modes))
    else:
        per_mode = [_mode_entries(eps, m, k_per_mode, n_eff, grid_c)
                    for m in modes]
    entries = [e for sub in per_mode for e in sub]
    entries.sort(key=lambda e: (e.lam, e.m, e.index_in_mode))
    return MeridianSpectrum(eps=eps, entries=tuple(entries),
                            grid_sizes={m: n_eff for m in modes},
                            k_per_mode=k_per_mode)


@dataclass(frozen=True)
class Pairing:
    direct: SpectrumEntry
    limit: object
    difference: float


def _family_gap(family, j):
    """Separation of family[j] from its same-family neighbors."""
    gaps = []
    if j > 0:
        gaps.append(family[j].lam - family[j - 1].lam)
    if j + 1 < len(family):
        gaps.append(family[j + 1].lam - family[j].lam)
    return min(gaps)


def classify_limit(spec, limit_list):
    """Pair each direct eigenvalue with its limit eigenvalue.

    Angular compatibility: a mode-m direct eigenvalue converges to a limit
    eigenvalue of the same angular index nu = m; equator parity selects
    the family (even -> Neumann, odd -> Dirichlet).  A pairing is rejected
    as ambiguous unless the eigenvalue sits within a quarter of the local
    family gap of its target.
    """
    if not spec.entries:
        raise ConfigError("cannot classify an empty spectrum")
    pairings = []
    for m in sorted({e.m for e in spec.entries}):
        direct = sorted((e for e in spec.entries if e.m == m),
                        key=lambda e: (e.lam, e.index_in_mode))
        for bc, parity in ((BoundaryCondition.NEUMANN, 1),
                           (BoundaryCondition.DIRICHLET, -1)):
            family = sorted((l for l in limit_list
                             if l.bc is bc and l.nu == m),
                            key=lambda l: l.lam)
            mine = [e for e in direct if e.parity == parity]
            for j, entry in enumerate(mine):
                if j + 2 > len(family):
                    raise AmbiguousPairing(
                        f"limit listing too short for mode m={m} "
                        f"({bc.value}, rank {j})")
                target = family[j]
                diff = abs(entry.lam - target.lam)
                gap = _family_gap(family, j)
                if diff > 0.25 * gap:
                    raise AmbiguousPairing(
                        f"direct eigenvalue {entry.lam!r} (m={m}, parity "
                        f"{parity:+d}) is {diff:.3e} from its target "
                        f"{target.lam!r}; exceeds a quarter of the family "
                        f"gap {gap:.3e}")
                pairings.append(Pairing(direct=entry, limit=target,
                                        difference=diff))
    pairings.sort(key=lambda p: (p.direct.lam, p.direct.m))
    return pairings
