"""Spectra of flattening surfaces of revolution.

The package computes three independent views of the same spectral
phenomenon: the limit spectrum of the double-sided unit disk, the
asymptotic coefficient matrices (L0, L1) governing the eps^2 ln(eps) and
eps^2 corrections under flattening, and a direct finite-difference
eigensolve of the meridian Sturm-Liouville problems on the flattened
surface itself.  The harness fits the direct eigenvalues against the
predictions; the collapsing ellipse supplies a closed-form cross-check.
"""

__version__ = "0.1.0"

from .coeffs import (
    CoefficientMatrices,
    DEFAULT_DELTA_SCHEDULE,
    FlatteningProfile,
    compute_coefficients,
    diagonalize_group,
    ellipsoid_profile,
    lambda0,
    lambda1_general,
    lambda1_radial_reduced,
    mu_eigenvalues,
    predict,
    profile_from_q_polynomial,
)
from .dense import symmetric_eigen_dense
from .ellipse import (
    EllipseModel,
    ExpansionRow,
    exact_eigenvalue,
    expansion_eigenvalue,
    verify_expansion,
)
from .errors import (
    AmbiguousPairing,
    CollapseSpectraError,
    ConfigError,
    DegenerateDesign,
    DimensionMismatch,
    DomainError,
    EmptyGroup,
    ExtrapolationUnstable,
    GridTooCoarse,
    InvalidMode,
    NonConvergence,
    NonFinite,
    NonPositiveMass,
    NotSymmetric,
    NumericalError,
    UnsupportedFamily,
)
from .fitting import (
    SqrtDeltaSeries,
    TwoTermFit,
    extrapolate_sqrt_delta,
    fit_two_term,
)
from .harness import (
    ConvergenceStudy,
    ExpansionFit,
    ValidationReport,
    convergence_study,
    run_ellipse_suite,
    validate_eigenvalue,
)
from .limit_spectrum import (
    AngularFactor,
    BoundaryCondition,
    DiskEigenpair,
    EigenGroup,
    LimitEigenvalue,
    Traces,
    eigenpair,
    group_degenerate,
    limit_eigenvalues,
    radial_eval,
    traces,
)
from .meridian import (
    MeridianGrid,
    MeridianSpectrum,
    Pairing,
    SpectrumEntry,
    assemble,
    build_grid,
    classify_limit,
    default_grid_size,
    spectrum,
)
from .quadrature import QuadratureResult, integrate_adaptive
from .specfun import (
    BesselZero,
    ZeroKind,
    bessel_j,
    bessel_j_deriv,
    bessel_zero,
    elliptic_E,
)
from .tridiag import TridiagonalSystem, tridiag_eigen_smallest

__all__ = [
    "__version__",
    # errors
    "AmbiguousPairing", "CollapseSpectraError", "ConfigError",
    "DegenerateDesign", "DimensionMismatch", "DomainError", "EmptyGroup",
    "ExtrapolationUnstable", "GridTooCoarse", "InvalidMode",
    "NonConvergence", "NonFinite", "NonPositiveMass", "NotSymmetric",
    "NumericalError", "UnsupportedFamily",
    # numerics
    "QuadratureResult", "integrate_adaptive",
    "SqrtDeltaSeries", "TwoTermFit", "extrapolate_sqrt_delta",
    "fit_two_term", "symmetric_eigen_dense",
    "TridiagonalSystem", "tridiag_eigen_smallest",
    # special functions
    "BesselZero", "ZeroKind", "bessel_j", "bessel_j_deriv", "bessel_zero",
    "elliptic_E",
    # limit spectrum
    "AngularFactor", "BoundaryCondition", "DiskEigenpair", "EigenGroup",
    "LimitEigenvalue", "Traces", "eigenpair", "group_degenerate",
    "limit_eigenvalues", "radial_eval", "traces",
    # coefficients
    "CoefficientMatrices", "DEFAULT_DELTA_SCHEDULE", "FlatteningProfile",
    "compute_coefficients", "diagonalize_group", "ellipsoid_profile",
    "lambda0", "lambda1_general", "lambda1_radial_reduced",
    "mu_eigenvalues", "predict", "profile_from_q_polynomial",
    # ellipse
    "EllipseModel", "ExpansionRow", "exact_eigenvalue",
    "expansion_eigenvalue", "verify_expansion",
    # meridian
    "MeridianGrid", "MeridianSpectrum", "Pairing", "SpectrumEntry",
    "assemble", "build_grid", "classify_limit", "default_grid_size",
    "spectrum",
    # harness
    "ConvergenceStudy", "ExpansionFit", "ValidationReport",
    "convergence_study", "run_ellipse_suite", "validate_eigenvalue",
]
