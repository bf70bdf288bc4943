"""Probe-frequency linear response of cavity 1.

Three equivalent routes to the upper sideband amplitude a1+:

* ``response_full``       -- the closed nested fraction in the absolute
                             detuning delta,
* ``response_simplified`` -- its near-resonance form in x = delta - omega_m,
* ``sideband_solve``      -- back-substitution of the full six-amplitude
                             linear system (also yields the anti-Stokes
                             amplitudes the closed form discards).

The output quadrature is eps_T = 2*kappa1*a1+.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingularDenominator
from .params import PhysicalParams, SteadyState, SystemParams

__all__ = [
    "SidebandAmplitudes",
    "ResponsePoint",
    "response_full",
    "response_simplified",
    "sideband_solve",
    "sideband_solve_physical",
    "quadrature",
    "spectrum",
]

_DENOM_FLOOR = 1e-30


@dataclass(frozen=True)
class SidebandAmplitudes:
    """The six linear-response amplitudes per unit probe amplitude."""

    q_plus: complex
    q_minus: complex
    a1_plus: complex
    a1_minus: complex
    a2_plus: complex
    a2_minus: complex


@dataclass(frozen=True)
class ResponsePoint:
    """One spectrum sample: detuning, sideband amplitude and quadrature."""

    x: float
    delta: float
    a1_plus: complex
    eps_T: complex

    @property
    def re(self) -> float:
        return self.eps_T.real

    @property
    def im(self) -> float:
        return self.eps_T.imag


def _inv(z: complex, what: str) -> complex:
    if abs(z) < _DENOM_FLOOR:
        raise SingularDenominator(f"{what} has magnitude {abs(z):.2e}")
    return 1.0 / z


def response_full(sys: SystemParams, delta: float) -> complex:
    """a1+ from the exact nested fraction in the absolute detuning delta."""
    om, gm = sys.omega_m, sys.gamma_m
    mech = (delta**2 - om**2 + 1j * delta * gm) / (2j * om)
    inner = (
        mech
        - sys.beta1 * _inv(sys.kappa1 - 1j * (delta + sys.delta1), "kappa1-i(delta+delta1)")
        + sys.beta2 * _inv(sys.kappa2 - 1j * (delta - sys.delta2), "kappa2-i(delta-delta2)")
        - sys.beta2 * _inv(sys.kappa2 - 1j * (delta + sys.delta2), "kappa2-i(delta+delta2)")
    )
    outer = sys.kappa1 - 1j * (delta - sys.delta1) + sys.beta1 * _inv(inner, "mechanical subfraction")
    return _inv(outer, "response denominator")


def response_simplified(sys: SystemParams, x: float, check_regime: bool = True) -> complex:
    """a1+ in the near-resonance approximation, as a function of x = delta - omega_m."""
    if check_regime and not sys.near_resonance():
        warnings.warn(
            "simplified response assumes delta1 ~ delta2 ~ omega_m; "
            f"got delta1={sys.delta1:g}, delta2={sys.delta2:g}, omega_m={sys.omega_m:g}",
            stacklevel=2,
        )
    inner = (
        sys.gamma_m / 2.0
        - 1j * x
        - sys.beta1 * _inv(sys.kappa1 - 2j * sys.omega_m, "kappa1-2i*omega_m")
        + sys.beta2 * _inv(sys.kappa2 - 1j * x, "kappa2-ix")
        - sys.beta2 * _inv(sys.kappa2 - 2j * sys.omega_m, "kappa2-2i*omega_m")
    )
    outer = sys.kappa1 - 1j * x + sys.beta1 * _inv(inner, "mechanical subfraction")
    return _inv(outer, "response denominator")


def quadrature(a1_plus: complex, kappa1: float) -> complex:
    """Output quadrature eps_T = 2*kappa1*a1+."""
    return 2.0 * kappa1 * a1_plus


def _sideband_backsub(
    omega_m: float,
    gamma_m: float,
    kappa1: float,
    kappa2: float,
    delta1: float,
    delta2: float,
    a10: complex,
    a20: complex,
    g0: float,
    m: float,
    hbar: float,
    delta: float,
) -> SidebandAmplitudes:
    # mirrors the appendix back-substitution rather than a dense solve
    A = m * (omega_m**2 - delta**2 - 1j * gamma_m * delta) / (hbar * g0)
    B = _inv(kappa1 - 1j * (delta - delta1), "B denominator")
    C = _inv(kappa1 - 1j * (delta + delta1), "C denominator")
    D = _inv(kappa2 - 1j * (delta - delta2), "D denominator")
    E = _inv(kappa2 - 1j * (delta + delta2), "E denominator")
    n1 = abs(a10) ** 2
    n2 = abs(a20) ** 2
    den = A - 1j * g0 * ((B - C) * n1 + (D - E) * n2)
    q_plus = B * np.conj(a10) * _inv(den, "q+ denominator")
    q_minus = np.conj(q_plus)
    a1_plus = (1j * g0 * q_plus * a10 + 1.0) * B
    a1_minus = 1j * g0 * q_minus * a10 * _inv(
        kappa1 + 1j * (delta + delta1), "a1- denominator"
    )
    a2_plus = -1j * g0 * q_plus * a20 * D
    a2_minus = -1j * g0 * q_minus * a20 * _inv(
        kappa2 + 1j * (delta + delta2), "a2- denominator"
    )
    return SidebandAmplitudes(
        q_plus=complex(q_plus),
        q_minus=complex(q_minus),
        a1_plus=complex(a1_plus),
        a1_minus=complex(a1_minus),
        a2_plus=complex(a2_plus),
        a2_minus=complex(a2_minus),
    )


def sideband_solve(sys: SystemParams, delta: float) -> SidebandAmplitudes:
    """All six sideband amplitudes from the reduced parameters.

    Realized with an internal phase-free operating point (hbar = m = g0 = 1,
    real a10, a20 matching the betas); a1+ is invariant under that choice.
    """
    if delta == 0.0:
        raise ValueError("delta must be nonzero")
    n1 = 2.0 * sys.omega_m * sys.beta1
    n2 = 2.0 * sys.omega_m * sys.beta2
    return _sideband_backsub(
        sys.omega_m,
        sys.gamma_m,
        sys.kappa1,
        sys.kappa2,
        sys.delta1,
        sys.delta2,
        np.sqrt(n1) + 0j,
        np.sqrt(n2) + 0j,
        1.0,
        1.0,
        1.0,
        delta,
    )


def sideband_solve_physical(
    phys: PhysicalParams, ss: SteadyState, delta: float
) -> SidebandAmplitudes:
    """Sideband amplitudes at a physical operating point."""
    if delta == 0.0:
        raise ValueError("delta must be nonzero")
    return _sideband_backsub(
        phys.omega_m,
        phys.gamma_m,
        phys.kappa1,
        phys.kappa2,
        phys.delta_c - phys.g0 * ss.q0,
        phys.delta_d + phys.g0 * ss.q0,
        ss.a10,
        ss.a20,
        phys.g0,
        phys.m,
        phys.hbar,
        delta,
    )


def _sideband_solve_dense(
    phys: PhysicalParams, ss: SteadyState, delta: float
) -> SidebandAmplitudes:
    """Generic 6x6 linear solve; test-only cross-check of the back-substitution.

    Unknown vector: [q+, a1+, conj(a1-), a2+, conj(a2-), conj(q-)].
    """
    om, gm = phys.omega_m, phys.gamma_m
    k1, k2 = phys.kappa1, phys.kappa2
    g0, m, hbar = phys.g0, phys.m, phys.hbar
    d1 = phys.delta_c - g0 * ss.q0
    d2 = phys.delta_d + g0 * ss.q0
    a10, a20 = ss.a10, ss.a20

    M = np.zeros((6, 6), dtype=complex)
    rhs = np.zeros(6, dtype=complex)
    # cavity 1 upper sideband
    M[0, 1] = k1 - 1j * (delta - d1)
    M[0, 0] = -1j * g0 * a10
    rhs[0] = 1.0
    # conj of cavity 1 lower sideband
    M[1, 2] = k1 - 1j * (delta + d1)
    M[1, 5] = 1j * g0 * np.conj(a10)
    # cavity 2 sidebands
    M[2, 3] = k2 - 1j * (delta - d2)
    M[2, 0] = 1j * g0 * a20
    M[3, 4] = k2 - 1j * (delta + d2)
    M[3, 5] = -1j * g0 * np.conj(a20)
    # mechanical sidebands (the conjugated lower equation closes the system)
    mech = m * (om**2 - delta**2 - 1j * gm * delta) / (hbar * g0)
    for row, col in ((4, 0), (5, 5)):
        M[row, col] = mech
        M[row, 1] -= np.conj(a10)
        M[row, 2] -= a10
        M[row, 3] += np.conj(a20)
        M[row, 4] += a20
    sol = np.linalg.solve(M, rhs)
    return SidebandAmplitudes(
        q_plus=complex(sol[0]),
        q_minus=complex(np.conj(sol[5])),
        a1_plus=complex(sol[1]),
        a1_minus=complex(np.conj(sol[2])),
        a2_plus=complex(sol[3]),
        a2_minus=complex(np.conj(sol[4])),
    )


def spectrum(
    sys: SystemParams,
    x_min: float,
    x_max: float,
    n: int,
    mode: str = "full",
) -> list[ResponsePoint]:
    """Response on a uniform grid of n points over [x_min, x_max].

    Each point is a pure function of (sys, x); evaluation is
    order-independent and deterministic.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not x_min < x_max:
        raise ValueError(f"need x_min < x_max, got [{x_min}, {x_max}]")
    if mode not in ("full", "simplified"):
        raise ValueError(f"unknown mode {mode!r}")

    points = []
    for x in np.linspace(x_min, x_max, n):
        x = float(x)
        delta = sys.omega_m + x
        try:
            if mode == "full":
                a1p = response_full(sys, delta)
            else:
                a1p = response_simplified(sys, x, check_regime=False)
        except SingularDenominator as exc:
            raise SingularDenominator(f"{exc} at x = {x:g}") from exc
        points.append(
            ResponsePoint(x=x, delta=delta, a1_plus=a1p, eps_T=quadrature(a1p, sys.kappa1))
        )
    return points
