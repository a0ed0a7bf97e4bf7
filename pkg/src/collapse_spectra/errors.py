"""Exception hierarchy shared by all collapse_spectra modules."""


class CollapseSpectraError(Exception):
    """Base class for all library errors."""


class ConfigError(CollapseSpectraError):
    """Invalid run configuration (bad flag value, malformed config file)."""


class NumericalError(CollapseSpectraError):
    """Base class for failures of a numerical procedure."""


class NonConvergence(NumericalError):
    """Iteration budget exhausted with the error estimate above tolerance."""


class NonFinite(NumericalError):
    """An integrand or matrix entry evaluated to NaN or infinity."""


class DimensionMismatch(CollapseSpectraError):
    """Array lengths inconsistent with the declared system size."""


class NonPositiveMass(CollapseSpectraError):
    """Generalized eigenproblem mass diagonal has a non-positive entry."""


class NotSymmetric(CollapseSpectraError):
    """Matrix fails the symmetry check of the dense eigensolver."""


class DegenerateDesign(CollapseSpectraError):
    """Least-squares design matrix is rank deficient (collinear basis)."""


class DomainError(CollapseSpectraError):
    """Argument outside the mathematical domain of a special function."""


class InvalidMode(CollapseSpectraError):
    """(bc, nu, k) combination does not label a disk eigenfunction."""


class EmptyGroup(CollapseSpectraError):
    """No limit eigenvalue within tolerance of the requested target."""


class UnsupportedFamily(CollapseSpectraError):
    """Reduced radial formula requested outside its two implemented families."""


class ExtrapolationUnstable(NumericalError):
    """sqrt-delta extrapolation error estimate exceeds the tolerance."""


class GridTooCoarse(CollapseSpectraError):
    """Meridian grid violates the N >= C/eps resolution rule."""


class AmbiguousPairing(CollapseSpectraError):
    """Direct eigenvalue cannot be matched to a unique limit eigenvalue."""
