"""Exception hierarchy.

Configuration and regime problems (wrong inputs, parameter sets outside the
oscillatory-well regime) are distinguished from numerical failures (series
budgets exhausted, conditioning limits) so the CLI can map them to the
documented exit codes 1 and 2.
"""


class DipoleWellError(Exception):
    """Base class for all package errors."""


class ForbiddenRegionError(DipoleWellError):
    """Radial coordinate below the hard-wall radius r0."""


class ImaginaryTauError(DipoleWellError):
    """Energy at or above the asymptotic well depth: tau would be imaginary."""


class RegimeError(DipoleWellError):
    """Parameter set outside the oscillatory regime (ell^2 >= 2 m alpha rho0^2 r0^4)."""


class WindowError(DipoleWellError):
    """Invalid energy search window."""


class GammaPoleError(DipoleWellError):
    """Log-gamma evaluated at a nonpositive integer."""


class AccuracyError(DipoleWellError):
    """A numerical routine could not meet its accuracy budget."""


class ConditioningError(AccuracyError):
    """Inputs in a region where the algorithm is too ill-conditioned to trust."""


class DegenerateSolutionError(DipoleWellError):
    """Wavefunction with zero norm cannot be normalized."""


class ConfigError(DipoleWellError):
    """Malformed or incomplete run configuration."""
