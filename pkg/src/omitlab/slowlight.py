"""Probe group delay (slow and fast light).

tau = d arg[eps_T - 1]/d omega_p, computed by Richardson-extrapolated
central differences with branch-continuous phase unwrapping, plus the
closed form for the delay at the perfect transparency window.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import PhaseSingularity
from .params import SystemParams
from .response import quadrature, response_full, response_simplified
from .window import window_width_equal_kappa

__all__ = ["DelayPoint", "group_delay", "delay_at_window", "max_delay_scan"]


@dataclass(frozen=True)
class DelayPoint:
    x: float
    tau: float
    classification: str  # slow | fast | neutral


def _eps_t(sys: SystemParams, x: float, mode: str) -> complex:
    if mode == "full":
        a1p = response_full(sys, sys.omega_m + x)
    else:
        a1p = response_simplified(sys, x, check_regime=False)
    return quadrature(a1p, sys.kappa1)


def _base_step(sys: SystemParams) -> float:
    width = sys.gamma_m
    if sys.kappa1 == sys.kappa2:
        try:
            width = max(width, window_width_equal_kappa(sys))
        except Exception:
            pass
    return 1e-4 * max(width, 1e-12 * sys.kappa1)


def _phase_derivative(sys: SystemParams, x: float, h: float, mode: str) -> float:
    # ascending stencil so the unwrap is branch-continuous across the window
    offsets = (-h, -h / 2.0, h / 2.0, h)
    vals = [_eps_t(sys, x + dx, mode) - 1.0 for dx in offsets]
    if any(abs(v) < 1e-12 for v in vals):
        raise PhaseSingularity(f"|eps_T - 1| < 1e-12 on the stencil at x = {x:g}")
    phi = np.unwrap([math.atan2(v.imag, v.real) for v in vals])
    d_h = (phi[3] - phi[0]) / (2.0 * h)
    d_h2 = (phi[2] - phi[1]) / h
    return float((4.0 * d_h2 - d_h) / 3.0)


def group_delay(sys: SystemParams, x: float, mode: str = "simplified") -> DelayPoint:
    """Group delay at detuning x; positive tau is slow light."""
    tau = _phase_derivative(sys, x, _base_step(sys), mode)
    band = 1e-12 / min(sys.kappa1, sys.kappa2)
    if tau > band:
        cls = "slow"
    elif tau < -band:
        cls = "fast"
    else:
        cls = "neutral"
    return DelayPoint(x=x, tau=tau, classification=cls)


def delay_at_window(sys: SystemParams) -> float:
    """Closed-form delay at the perfect transparency window."""
    om2 = sys.omega_m**2
    k1, k2, gm, b1 = sys.kappa1, sys.kappa2, sys.gamma_m, sys.beta1
    if b1 <= 0:
        raise ValueError("delay_at_window requires beta1 > 0")
    return k1 * (8.0 * k2 * om2 + gm * (k2**2 + 4.0 * om2)) / (
        4.0 * b1 * k2 * om2
    ) - k1**2 * (k2**2 + 4.0 * om2) / (2.0 * k2 * om2 * (k1**2 + 4.0 * om2))


def max_delay_scan(
    sys: SystemParams,
    x_min: float,
    x_max: float,
    n: int,
    mode: str = "simplified",
) -> tuple[float, float]:
    """Grid argmax of tau, refined by bounded minimization of -tau.

    Ties on the grid break toward smaller |x|.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    grid = np.linspace(x_min, x_max, n)
    taus = np.array([group_delay(sys, float(x), mode).tau for x in grid])
    best = np.flatnonzero(taus == taus.max())
    i = int(best[np.argmin(np.abs(grid[best]))])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, n - 1)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = minimize_scalar(
            lambda x: -group_delay(sys, x, mode).tau,
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-6 * (x_max - x_min)},
        )
    x_star = float(res.x)
    return x_star, group_delay(sys, x_star, mode).tau
