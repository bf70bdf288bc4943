"""omitlab: optical response of a two-cavity, one-membrane optomechanical
system -- perfect transparency windows, slow light, induced absorption, and
an independent time-domain oracle."""

from .errors import (
    BelowThreshold,
    Blowup,
    BranchOutOfRange,
    ConfigError,
    IllConditioned,
    NoConvergence,
    NoDip,
    NoRoot,
    OmitLabError,
    PhaseSingularity,
    SingularDenominator,
    SingularEta,
    UnequalKappas,
    UnknownFigure,
)
from .oracle import (
    SidebandFit,
    Trajectory,
    ValidationReport,
    extract_sidebands,
    integrate,
    kernel_backend,
    validate_perturbative,
)
from .params import (
    PhysicalParams,
    SteadyState,
    SystemParams,
    drive_for_target,
    effective_couplings,
    reduced_from_physical,
    steady_state,
)
from .response import (
    ResponsePoint,
    SidebandAmplitudes,
    quadrature,
    response_full,
    response_simplified,
    sideband_solve,
    sideband_solve_physical,
    spectrum,
)
from .slowlight import DelayPoint, delay_at_window, group_delay, max_delay_scan
from .window import (
    WindowSolution,
    above_threshold,
    absorption_at_resonance,
    perfect_window_general,
    perfect_window_large_k2,
    subfraction_pole_residual,
    window_width_equal_kappa,
    window_width_numeric,
)

__version__ = "0.1.0"
