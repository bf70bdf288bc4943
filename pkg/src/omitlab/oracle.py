"""Time-domain oracle: integrate the nonlinear mean-field equations with a
weak probe, fit the sideband ansatz, and compare against the perturbative
algebra.

The RK4 inner loop runs in a compiled extension when available, with a
pure-Python fallback selected at import (see ``kernel_backend``).
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import Blowup, IllConditioned
from .params import PhysicalParams, SteadyState, adiabatic_branch, steady_state
from .response import sideband_solve_physical

try:
    from ._rk4_cy import integrate_rk4 as _integrate_rk4

    _BACKEND = "cython"
except ImportError:  # extension not built
    from ._rk4_py import integrate_rk4 as _integrate_rk4

    _BACKEND = "python"

__all__ = [
    "Trajectory",
    "SidebandFit",
    "ValidationReport",
    "kernel_backend",
    "max_stable_dt",
    "transient_time",
    "integrate",
    "extract_sidebands",
    "validate_perturbative",
    "write_trajectory_csv",
]


def kernel_backend() -> str:
    """Which RK4 kernel is active: 'cython' or 'python'."""
    return _BACKEND


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled time-domain solution (t_k = t0 + k*dt, no drift)."""

    t0: float
    dt: float
    a1: np.ndarray
    a2: np.ndarray
    q: np.ndarray
    p: np.ndarray
    params: PhysicalParams
    delta: float

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.q))

    def __len__(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class SidebandFit:
    """Coefficients of a1(t) ~ c0 + eps_p*(a1p*e^{-i delta t} + a1m*e^{+i delta t})."""

    a10_fit: complex
    a1p_fit: complex
    a1m_fit: complex
    residual_rms: float
    window: tuple[float, float]


def max_stable_dt(phys: PhysicalParams, delta: float = 0.0) -> float:
    f = max(
        phys.omega_m,
        abs(phys.delta_c),
        abs(phys.delta_d),
        phys.kappa1,
        phys.kappa2,
        abs(delta),
    )
    return 2.0 * math.pi / (40.0 * f)


def transient_time(phys: PhysicalParams) -> float:
    rates = [phys.kappa1, phys.kappa2]
    if phys.gamma_m > 0:
        rates.append(phys.gamma_m / 2.0)
    return 12.0 / min(rates)


def _blowup_cap(phys: PhysicalParams, y0) -> float:
    scale = max(
        1.0,
        (phys.eps_c + phys.eps_p) / phys.kappa1,
        phys.eps_d / phys.kappa2,
        max(abs(v) for v in y0),
    )
    return 1e12 * scale


def integrate(
    phys: PhysicalParams,
    delta: float,
    t_end: float,
    dt: float,
    y0: SteadyState | tuple | None = None,
    t_start: float = 0.0,
    cap: float | None = None,
) -> Trajectory:
    """Fixed-step RK4 integration of the six real mean-field ODEs.

    The probe drives cavity 1 as eps_p*exp(-i*delta*t).  By default the
    initial condition is the probe-off adiabatic steady state, so the only
    transient is the probe ring-up.
    """
    dt_max = max_stable_dt(phys, delta)
    if dt > dt_max:
        raise ValueError(f"dt = {dt:g} exceeds the resolution bound {dt_max:g}")
    n_steps = int(math.floor((t_end - t_start) / dt))
    if n_steps < 1:
        raise ValueError("t_end too close to t_start for the given dt")

    if y0 is None:
        roots = steady_state(phys)
        y0 = roots[adiabatic_branch(phys)]
    if isinstance(y0, SteadyState):
        y0 = (y0.a10.real, y0.a10.imag, y0.a20.real, y0.a20.imag, y0.q0, y0.p0)
    if cap is None:
        cap = _blowup_cap(phys, y0)

    status, r1, i1, r2, i2, q, p = _integrate_rk4(
        phys.kappa1,
        phys.kappa2,
        phys.delta_c,
        phys.delta_d,
        phys.g0,
        phys.m,
        phys.hbar,
        phys.omega_m,
        phys.gamma_m,
        phys.eps_c,
        phys.eps_d,
        phys.eps_p,
        delta,
        y0,
        t_start,
        dt,
        n_steps,
        cap,
    )
    if status >= 0:
        raise Blowup(
            f"state magnitude exceeded {cap:.2e} at t = {t_start + status * dt:g}"
        )
    return Trajectory(
        t0=t_start,
        dt=dt,
        a1=r1 + 1j * i1,
        a2=r2 + 1j * i2,
        q=q,
        p=p,
        params=phys,
        delta=delta,
    )


def _default_window(traj: Trajectory) -> tuple[float, float]:
    t_rel = transient_time(traj.params)
    t_last = traj.t0 + traj.dt * (len(traj) - 1)
    start = traj.t0 + t_rel
    if start >= t_last:
        raise ValueError("trajectory does not extend past the transient")
    # last 60% of the post-transient record
    return t_last - 0.6 * (t_last - start), t_last


def extract_sidebands(
    traj: Trajectory,
    delta: float,
    eps_p: float,
    window: tuple[float, float] | None = None,
) -> SidebandFit:
    """Least-squares fit of a1(t) to the three-component sideband ansatz."""
    if window is None:
        window = _default_window(traj)
    w0, w1 = window
    length = w1 - w0
    if delta * length < 4.0 * math.pi:
        raise IllConditioned(
            f"delta*window_length = {delta * length:g} < 4*pi: sideband basis "
            "functions not resolvable"
        )
    t = traj.t
    sel = (t >= w0) & (t <= w1)
    ts = t[sel]
    a1 = traj.a1[sel]
    basis = np.column_stack(
        [np.ones_like(ts), np.exp(-1j * delta * ts), np.exp(1j * delta * ts)]
    )
    gram = basis.conj().T @ basis
    rhs = basis.conj().T @ a1
    c0, cp, cm = np.linalg.solve(gram, rhs)
    resid = a1 - basis @ np.array([c0, cp, cm])
    rms = float(np.sqrt(np.mean(np.abs(resid) ** 2)) / max(abs(c0), 1e-300))
    return SidebandFit(
        a10_fit=complex(c0),
        a1p_fit=complex(cp / eps_p),
        a1m_fit=complex(cm / eps_p),
        residual_rms=rms,
        window=(float(w0), float(w1)),
    )


@dataclass(frozen=True)
class ValidationReport:
    """Per-detuning comparison of the time-domain fit against the algebra."""

    entries: list = field(default_factory=list)  # (delta, rel_err or None, error msg)
    tolerance: float = 1e-2

    @property
    def errors(self) -> list[float]:
        return [e[1] for e in self.entries if e[1] is not None]

    @property
    def max_error(self) -> float:
        return max(self.errors)

    @property
    def median_error(self) -> float:
        return statistics.median(self.errors)

    @property
    def passed(self) -> bool:
        if len(self.errors) != len(self.entries):
            return False
        return self.max_error <= self.tolerance


def validate_perturbative(
    phys: PhysicalParams,
    delta_list,
    t_end: float | None = None,
    dt: float | None = None,
    tolerance: float = 1e-2,
) -> ValidationReport:
    """Relative error |a1p_fit - a1+| / |a1+| at each probe detuning.

    Per-point failures are recorded, not raised, so one bad detuning does
    not abort the sweep.
    """
    if phys.eps_p <= 0:
        raise ValueError("validate_perturbative requires eps_p > 0")
    roots = steady_state(replace(phys, eps_p=0.0))
    ss = roots[adiabatic_branch(replace(phys, eps_p=0.0))]
    entries = []
    for delta in delta_list:
        try:
            dt_use = dt if dt is not None else 0.45 * max_stable_dt(phys, delta)
            t_use = (
                t_end
                if t_end is not None
                else transient_time(phys) + 200.0 * 2.0 * math.pi / abs(delta)
            )
            traj = integrate(phys, delta, t_use, dt_use, y0=ss)
            fit = extract_sidebands(traj, delta, phys.eps_p)
            ref = sideband_solve_physical(phys, ss, delta).a1_plus
            rel = abs(fit.a1p_fit - ref) / abs(ref)
            entries.append((delta, rel, None))
        except Exception as exc:  # aggregate without aborting remaining points
            entries.append((delta, None, f"{type(exc).__name__}: {exc}"))
    return ValidationReport(entries=entries, tolerance=tolerance)


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Dump a trajectory as CSV: t,re_a1,im_a1,re_a2,im_a2,q,p."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re_a1", "im_a1", "re_a2", "im_a2", "q", "p"])
        for k in range(len(traj)):
            t = traj.t0 + k * traj.dt
            w.writerow(
                [
                    f"{v:.12g}"
                    for v in (
                        t,
                        traj.a1[k].real,
                        traj.a1[k].imag,
                        traj.a2[k].real,
                        traj.a2[k].imag,
                        traj.q[k],
                        traj.p[k],
                    )
                ]
            )
