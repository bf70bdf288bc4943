"""Exception hierarchy shared by all omitlab modules."""


class OmitLabError(Exception):
    """Base class for all omitlab errors."""


class NoConvergence(OmitLabError):
    """An iterative solver failed to reach its tolerance."""


class BranchOutOfRange(OmitLabError, IndexError):
    """Requested steady-state branch index does not exist."""


class SingularDenominator(OmitLabError, ZeroDivisionError):
    """A denominator in a response formula is numerically zero."""


class BelowThreshold(OmitLabError):
    """Drive strength too weak for a perfect transparency window
    (2*beta1*kappa1 <= gamma_m*(kappa1^2 + 4*omega_m^2))."""


class NoRoot(OmitLabError):
    """Numeric window search found no admissible operating point."""


class UnequalKappas(OmitLabError):
    """Closed-form width requires kappa1 == kappa2."""


class SingularEta(OmitLabError):
    """The eta denominator of the closed-form width vanishes."""


class NoDip(OmitLabError):
    """No genuine transparency dip to measure a width on."""


class PhaseSingularity(OmitLabError):
    """eps_T is too close to 1 for the output phase to be defined."""


class Blowup(OmitLabError):
    """Time-domain state exceeded its magnitude cap (instability or bad step)."""


class IllConditioned(OmitLabError):
    """Sideband fit basis functions not resolvable over the fit window."""


class UnknownFigure(OmitLabError, KeyError):
    """No built-in parameter set for the requested figure id."""


class ConfigError(OmitLabError):
    """A run configuration failed validation."""
