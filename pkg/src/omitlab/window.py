"""Perfect transparency windows, window widths, and induced absorption.

Two window solvers: a closed form valid for large kappa2, and a general
numeric solver that finds the operating point (x_w, beta2) at which the
absorption dip Re[eps_T] touches exactly zero (tangency: Re = 0 and
dRe/dx = 0).  In the large-kappa2 regime the two agree; with small kappa2
only the numeric route applies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import (
    BelowThreshold,
    NoDip,
    NoRoot,
    SingularDenominator,
    SingularEta,
    UnequalKappas,
)
from .params import SystemParams
from .response import quadrature, response_simplified

__all__ = [
    "WindowSolution",
    "above_threshold",
    "subfraction_pole_residual",
    "perfect_window_large_k2",
    "perfect_window_general",
    "window_width_equal_kappa",
    "window_width_numeric",
    "absorption_at_resonance",
]


@dataclass(frozen=True)
class WindowSolution:
    """A perfect-transparency operating point."""

    x_w: float
    beta2: float
    xi: float
    method: str
    eta: float | None = None
    width: float | None = None


def _re_eps_t(sys: SystemParams, x: float, beta2: float) -> float:
    s = sys.with_(beta2=beta2)
    return quadrature(response_simplified(s, x, check_regime=False), s.kappa1).real


def above_threshold(sys: SystemParams) -> bool:
    """Drive strong enough for a perfect window to exist."""
    return 2.0 * sys.beta1 * sys.kappa1 > sys.gamma_m * (
        sys.kappa1**2 + 4.0 * sys.omega_m**2
    )


def subfraction_pole_residual(sys: SystemParams, x: float, beta2: float) -> complex:
    """Residual of the pole condition of the mechanical subfraction.

    Vanishes exactly where the full complex response amplitude is zero;
    stays bounded away from zero at x = 0 for any beta2 > 0.
    """
    om = sys.omega_m
    return (
        sys.gamma_m / 2.0
        - 1j * x
        - sys.beta1 / (sys.kappa1 - 2j * om)
        + beta2 / (sys.kappa2 - 1j * x)
        - beta2 / (sys.kappa2 - 2j * om)
    )


def _xi(sys: SystemParams) -> float:
    return 8.0 * sys.kappa2 * sys.omega_m**2 + sys.gamma_m * (
        sys.kappa2**2 + 4.0 * sys.omega_m**2
    )


def _eta(sys: SystemParams) -> float:
    k = sys.kappa1
    return (
        8.0 * k * sys.omega_m**2
        - 2.0 * sys.beta1 * k
        + sys.gamma_m * (k**2 + 4.0 * sys.omega_m**2)
    )


def perfect_window_large_k2(sys: SystemParams) -> WindowSolution:
    """Closed-form window location and drive strength (kappa2 >> |x_w|)."""
    om2 = sys.omega_m**2
    k1, k2, gm, b1 = sys.kappa1, sys.kappa2, sys.gamma_m, sys.beta1
    s1 = k1**2 + 4.0 * om2
    s2 = k2**2 + 4.0 * om2
    if not above_threshold(sys):
        raise BelowThreshold(
            f"2*beta1*kappa1 = {2 * b1 * k1:g} <= gamma_m*(kappa1^2+4*omega_m^2) "
            f"= {gm * s1:g}: required beta2 would be <= 0"
        )
    xi = _xi(sys)
    x_w = (
        2.0 * k2 * sys.omega_m * (gm * k2 * s1 - 2.0 * b1 * (k1 * k2 + 4.0 * om2))
    ) / (s1 * xi - 2.0 * b1 * k1 * s2)
    beta2 = k2 * s2 * (2.0 * b1 * k1 - gm * s1) / (8.0 * om2 * s1)
    if k2 < 20.0 * abs(x_w):
        warnings.warn(
            f"kappa2 = {k2:g} is not >> |x_w| = {abs(x_w):g}; the closed form "
            "is outside its validity regime, use the numeric solver",
            stacklevel=2,
        )
    eta = _eta(sys) if sys.kappa1 == sys.kappa2 else None
    return WindowSolution(
        x_w=x_w, beta2=beta2, xi=xi, eta=eta, method="analytic-large-k2"
    )


def _dip_min(sys: SystemParams, beta2: float, lo: float, hi: float) -> tuple[float, float]:
    res = minimize_scalar(
        lambda x: _re_eps_t(sys, x, beta2),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-13 * max(abs(lo), abs(hi), 1.0)},
    )
    return float(res.x), float(res.fun)


def perfect_window_general(
    sys: SystemParams, seed: tuple[float, float] | None = None
) -> WindowSolution:
    """Numeric window: (x_w, beta2) where min_x Re[eps_T] touches zero.

    The dip minimum is monotone in beta2 near the solution, so the outer
    solve is a bracketed root find on beta2 with an inner 1-D minimization
    over x.  Default seed comes from the large-kappa2 closed form; a grid
    scan over x in [-kappa1, kappa1] and beta2 in (0, 10*beta1] is used when
    no seed is available.
    """
    if not above_threshold(sys):
        raise BelowThreshold(
            "no perfect window exists below the drive threshold "
            "2*beta1*kappa1 > gamma_m*(kappa1^2+4*omega_m^2)"
        )
    if seed is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            analytic = perfect_window_large_k2(sys)
        x0, b0 = analytic.x_w, analytic.beta2
        if not (b0 > 0 and math.isfinite(x0) and math.isfinite(b0)):
            x0, b0 = _grid_seed(sys)
    else:
        x0, b0 = seed
        if b0 <= 0:
            raise ValueError("seed beta2 must be > 0")

    # bracket for the inner minimization: generous multiple of the seed
    # location, never narrower than the damping scales
    half = max(8.0 * abs(x0), 20.0 * sys.gamma_m, 1e-9 * sys.kappa1)
    lo, hi = x0 - half, x0 + half

    def dip(beta2: float) -> float:
        return _dip_min(sys, beta2, lo, hi)[1]

    # bracket beta2 by geometric expansion around the seed
    b_lo = b_hi = b0
    f0 = dip(b0)
    factor = 1.3
    for _ in range(60):
        if f0 < 0:
            b_hi = b_lo * factor
            if dip(b_hi) > 0:
                break
            b_lo = b_hi
        else:
            b_lo = b_hi / factor
            if dip(b_lo) < 0:
                break
            b_hi = b_lo
        if b_lo < 1e-280 or b_hi > 1e280:
            break
    else:
        raise NoRoot("could not bracket a zero-touching dip in beta2")
    if not (dip(b_lo) < 0 < dip(b_hi)):
        raise NoRoot(
            f"no sign change of the dip minimum in beta2 bracket "
            f"[{b_lo:g}, {b_hi:g}]"
        )

    beta2 = brentq(dip, b_lo, b_hi, xtol=1e-300, rtol=8.9e-16)
    x_w, re_min = _dip_min(sys, beta2, lo, hi)
    tol = 1e-9 * (sys.gamma_m / 2.0 + abs(x_w) + 1.0)
    if abs(re_min) > tol:
        raise NoRoot(
            f"dip residual {re_min:.3e} above tolerance {tol:.3e} at "
            f"x = {x_w:g}, beta2 = {beta2:g}"
        )
    eta = _eta(sys) if sys.kappa1 == sys.kappa2 else None
    return WindowSolution(
        x_w=x_w, beta2=beta2, xi=_xi(sys), eta=eta, method="numeric-root"
    )


def _grid_seed(sys: SystemParams) -> tuple[float, float]:
    """Coarse scan for a starting point; deterministic lowest-|x| tie-break."""
    xs = np.linspace(-sys.kappa1, sys.kappa1, 801)
    xs = xs[np.argsort(np.abs(xs), kind="stable")]
    b2s = np.geomspace(10.0 * sys.beta1, 1e-6 * sys.beta1, 61)
    best = None
    for b2 in b2s:
        vals = np.array([_re_eps_t(sys, float(x), float(b2)) for x in xs])
        i = int(np.argmin(np.abs(vals)))
        cand = (abs(float(vals[i])), abs(float(xs[i])), float(xs[i]), float(b2))
        if best is None or cand[:2] < best[:2]:
            best = cand
    assert best is not None
    return best[2], best[3]


def window_width_equal_kappa(sys: SystemParams) -> float:
    """Closed-form full width at half maximum (requires kappa1 == kappa2)."""
    if sys.kappa1 != sys.kappa2:
        raise UnequalKappas(
            f"kappa1 = {sys.kappa1:g} != kappa2 = {sys.kappa2:g}"
        )
    k, om, gm, b1 = sys.kappa1, sys.omega_m, sys.gamma_m, sys.beta1
    eta = _eta(sys)
    scale = 8.0 * k * om**2
    if abs(eta) < 1e-30 * scale:
        raise SingularEta(f"eta = {eta:g} vanishes at this parameter set")
    a = om * (4.0 * b1 - 2.0 * k * gm)
    t1 = math.sqrt(k * (32.0 * b1 * om**2 * eta + k * (eta + a) ** 2)) / (2.0 * eta)
    t2 = math.sqrt(k * (32.0 * b1 * om**2 * eta + k * (eta - a) ** 2)) / (2.0 * eta)
    return t1 + t2 - k


def window_width_numeric(sys: SystemParams, win: WindowSolution) -> float:
    """FWHM of the transparency dip, measured on Re[eps_T].

    Reference level is the mean of the two local maxima flanking the dip
    within +-10*kappa1; the width is the distance between the half-level
    crossings nearest x_w, each refined by bisection.
    """
    s = sys.with_(beta2=win.beta2)
    f = lambda x: quadrature(response_simplified(s, x, check_regime=False), s.kappa1).real
    xw = win.x_w
    dip = f(xw)
    span = 10.0 * s.kappa1

    def flank_max(lo: float, hi: float) -> tuple[float, float]:
        grid = np.linspace(lo, hi, 2001)
        vals = np.array([f(float(x)) for x in grid])
        i = int(np.argmax(vals))
        a = grid[max(i - 1, 0)]
        b = grid[min(i + 1, len(grid) - 1)]
        res = minimize_scalar(
            lambda x: -f(x), bounds=(a, b), method="bounded",
            options={"xatol": 1e-10 * s.kappa1},
        )
        return float(res.x), float(-res.fun)

    eps = 1e-9 * s.kappa1
    xl_max, fl = flank_max(xw - span, xw - eps)
    xr_max, fr = flank_max(xw + eps, xw + span)
    ref = 0.5 * (fl + fr)
    if not (fl > 2.0 * dip and fr > 2.0 * dip) or ref <= dip:
        raise NoDip(
            f"no flanking maxima above twice the dip value (dip = {dip:g}, "
            f"flanks = {fl:g}, {fr:g})"
        )
    half = dip + 0.5 * (ref - dip)
    x_left = brentq(lambda x: f(x) - half, xl_max, xw, xtol=1e-6 * s.kappa1 * 1e-3)
    x_right = brentq(lambda x: f(x) - half, xw, xr_max, xtol=1e-6 * s.kappa1 * 1e-3)
    return x_right - x_left


def absorption_at_resonance(sys: SystemParams) -> complex:
    """Output quadrature eps_T at x = 0 via its dedicated closed form."""
    om = sys.omega_m
    inner = (
        sys.gamma_m / 2.0
        - sys.beta1 / (sys.kappa1 - 2j * om)
        + sys.beta2 / sys.kappa2
        - sys.beta2 / (sys.kappa2 - 2j * om)
    )
    if abs(inner) < 1e-30:
        raise SingularDenominator("mechanical subfraction vanishes at x = 0")
    den = sys.kappa1 + sys.beta1 / inner
    if abs(den) < 1e-30:
        raise SingularDenominator("response denominator vanishes at x = 0")
    return 2.0 * sys.kappa1 / den
