"""Parameter types, the steady-state solver, and the physical <-> reduced map.

All rates and frequencies share one angular-frequency unit; the effective
drive strengths beta1, beta2 carry frequency^2.  Internally hbar = m = 1
unless overridden; only the combination hbar*g0^2/(2*m*omega_m) matters for
the reduced dynamics.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .errors import BranchOutOfRange, NoConvergence

__all__ = [
    "PhysicalParams",
    "SystemParams",
    "SteadyState",
    "cavity_amplitudes",
    "steady_state",
    "adiabatic_branch",
    "effective_couplings",
    "reduced_from_physical",
    "drive_for_target",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-level parameters of the two-cavity, one-membrane system.

    Frequencies/rates in a common angular-frequency unit, g0 in
    frequency/length, m in mass units consistent with hbar.
    """

    omega_m: float
    gamma_m: float
    kappa1: float
    kappa2: float
    g0: float
    delta_c: float
    delta_d: float
    eps_c: float = 0.0
    eps_d: float = 0.0
    eps_p: float = 0.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.omega_m > 0:
            raise ValueError(f"omega_m must be > 0, got {self.omega_m}")
        if not self.kappa1 > 0:
            raise ValueError(f"kappa1 must be > 0, got {self.kappa1}")
        if not self.kappa2 > 0:
            raise ValueError(f"kappa2 must be > 0, got {self.kappa2}")
        if self.gamma_m < 0:
            raise ValueError(f"gamma_m must be >= 0, got {self.gamma_m}")
        if self.m <= 0 or self.hbar <= 0:
            raise ValueError("m and hbar must be > 0")
        for name in ("eps_c", "eps_d", "eps_p"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.g0 > 0.01 * self.omega_m:
            warnings.warn(
                f"g0 = {self.g0:g} exceeds 0.01*omega_m; the mean-field "
                "factorization assumes weak single-photon coupling",
                stacklevel=2,
            )
        if self.eps_c > 0 and self.eps_p > 0.01 * self.eps_c:
            warnings.warn(
                f"eps_p = {self.eps_p:g} exceeds 0.01*eps_c; probe is not "
                "perturbatively small",
                stacklevel=2,
            )


@dataclass(frozen=True)
class SystemParams:
    """Reduced parameter set driving all analytic response formulas."""

    omega_m: float
    gamma_m: float
    kappa1: float
    kappa2: float
    delta1: float
    delta2: float
    beta1: float
    beta2: float

    def __post_init__(self):
        if not self.omega_m > 0:
            raise ValueError(f"omega_m must be > 0, got {self.omega_m}")
        if not self.kappa1 > 0:
            raise ValueError(f"kappa1 must be > 0, got {self.kappa1}")
        if not self.kappa2 > 0:
            raise ValueError(f"kappa2 must be > 0, got {self.kappa2}")
        if self.gamma_m < 0:
            raise ValueError(f"gamma_m must be >= 0, got {self.gamma_m}")
        if self.beta1 < 0 or self.beta2 < 0:
            raise ValueError("beta1 and beta2 must be >= 0")

    def near_resonance(self, rel: float = 0.1) -> bool:
        """True when both effective detunings sit close to omega_m, the
        regime assumed by the simplified response."""
        return (
            abs(self.delta1 - self.omega_m) <= rel * self.omega_m
            and abs(self.delta2 - self.omega_m) <= rel * self.omega_m
        )

    def scaled(self, s: float) -> "SystemParams":
        """Rescale all frequencies by s (betas by s^2).

        Dimensionless outputs (eps_T) are invariant under this map and
        delays scale by 1/s.
        """
        return SystemParams(
            omega_m=self.omega_m * s,
            gamma_m=self.gamma_m * s,
            kappa1=self.kappa1 * s,
            kappa2=self.kappa2 * s,
            delta1=self.delta1 * s,
            delta2=self.delta2 * s,
            beta1=self.beta1 * s * s,
            beta2=self.beta2 * s * s,
        )

    def with_(self, **kwargs) -> "SystemParams":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class SteadyState:
    """Drive-on, probe-off operating point (q0, p0, a10, a20)."""

    q0: float
    a10: complex
    a20: complex
    p0: float = 0.0


def cavity_amplitudes(phys: PhysicalParams, q0: float) -> tuple[complex, complex]:
    """Intracavity amplitudes consistent with a given membrane displacement."""
    d1 = phys.delta_c - phys.g0 * q0
    d2 = phys.delta_d + phys.g0 * q0
    a10 = phys.eps_c / (phys.kappa1 + 1j * d1)
    a20 = phys.eps_d / (phys.kappa2 + 1j * d2)
    return a10, a20


def _residual(phys: PhysicalParams, q0: float) -> float:
    a10, a20 = cavity_amplitudes(phys, q0)
    rad = phys.hbar * phys.g0 * (abs(a10) ** 2 - abs(a20) ** 2)
    return q0 - rad / (phys.m * phys.omega_m**2)


def _scan_range(phys: PhysicalParams) -> float:
    return (
        4.0
        * phys.hbar
        * phys.g0
        * ((phys.eps_c / phys.kappa1) ** 2 + (phys.eps_d / phys.kappa2) ** 2)
        / (phys.m * phys.omega_m**2)
    )


def steady_state(phys: PhysicalParams, n_scan: int = 4001) -> list[SteadyState]:
    """All real roots of the radiation-pressure fixed-point equation.

    Roots are found by a dense sign-change scan over the a-priori bound
    [-Q, Q] followed by bracketed refinement, and returned sorted by q0
    ascending.  The probe is treated as off.
    """
    if phys.eps_c == 0.0 and phys.eps_d == 0.0:
        return [SteadyState(q0=0.0, a10=0j, a20=0j)]
    if phys.g0 == 0.0:
        a10, a20 = cavity_amplitudes(phys, 0.0)
        return [SteadyState(q0=0.0, a10=a10, a20=a20)]

    q_max = _scan_range(phys)
    grid = np.linspace(-q_max, q_max, n_scan)
    f = np.array([_residual(phys, q) for q in grid])
    roots: list[float] = []
    for i in np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) <= 0):
        lo, hi = grid[i], grid[i + 1]
        if f[i] == 0.0:
            roots.append(float(lo))
            continue
        try:
            r = brentq(lambda q: _residual(phys, q), lo, hi, xtol=1e-300, rtol=8.9e-16)
        except RuntimeError as exc:
            raise NoConvergence(
                f"root refinement failed in bracket [{lo:g}, {hi:g}]"
            ) from exc
        roots.append(float(r))

    # dedupe roots that landed on shared grid points
    roots.sort()
    scale = max(q_max, 1.0) * 1e-12
    unique: list[float] = []
    for r in roots:
        if not unique or abs(r - unique[-1]) > scale:
            unique.append(r)

    out = []
    for q0 in unique:
        a10, a20 = cavity_amplitudes(phys, q0)
        out.append(SteadyState(q0=q0, a10=a10, a20=a20))
    return out


def adiabatic_branch(phys: PhysicalParams, ramp_steps: int = 8) -> int:
    """Index (into the sorted root list) of the branch continuously connected
    to q0 = 0 as the drives ramp up from zero."""
    q_prev = 0.0
    for k in range(1, ramp_steps + 1):
        t = k / ramp_steps
        ramped = replace(phys, eps_c=phys.eps_c * t, eps_d=phys.eps_d * t)
        roots = steady_state(ramped)
        q_prev = min((ss.q0 for ss in roots), key=lambda q: abs(q - q_prev))
    roots = steady_state(phys)
    return min(range(len(roots)), key=lambda i: abs(roots[i].q0 - q_prev))


def effective_couplings(phys: PhysicalParams, ss: SteadyState) -> tuple[float, float]:
    """Effective drive strengths (beta1, beta2) at an operating point."""
    c = phys.hbar * phys.g0**2 / (2.0 * phys.m * phys.omega_m)
    return c * abs(ss.a10) ** 2, c * abs(ss.a20) ** 2


def reduced_from_physical(
    phys: PhysicalParams, branch: int | None = None
) -> SystemParams:
    """Reduced parameters on one steady-state branch.

    branch=None selects the adiabatically prepared branch (the root
    connected to q0 = 0 as drives ramp from zero); an integer indexes the
    q0-ascending root list.
    """
    roots = steady_state(phys)
    if branch is None:
        branch = adiabatic_branch(phys)
    if not 0 <= branch < len(roots):
        raise BranchOutOfRange(f"branch {branch} of {len(roots)} roots")
    ss = roots[branch]
    beta1, beta2 = effective_couplings(phys, ss)
    return SystemParams(
        omega_m=phys.omega_m,
        gamma_m=phys.gamma_m,
        kappa1=phys.kappa1,
        kappa2=phys.kappa2,
        delta1=phys.delta_c - phys.g0 * ss.q0,
        delta2=phys.delta_d + phys.g0 * ss.q0,
        beta1=beta1,
        beta2=beta2,
    )


def drive_for_target(
    target: SystemParams,
    g0: float,
    m: float = 1.0,
    hbar: float = 1.0,
    eps_p: float = 0.0,
    rtol: float = 1e-9,
) -> PhysicalParams:
    """Physical parameters whose self-consistent steady state realizes the
    given reduced set.

    The inverse map is closed-form: the target betas fix |a10|, |a20|, hence
    q0, hence the bare detunings and drive amplitudes.  The result is
    verified by running the forward map and checking the betas and effective
    detunings to `rtol` relative.
    """
    if g0 <= 0:
        raise ValueError("g0 must be > 0")
    c = hbar * g0**2 / (2.0 * m * target.omega_m)
    n1 = target.beta1 / c  # |a10|^2
    n2 = target.beta2 / c
    q0 = hbar * g0 * (n1 - n2) / (m * target.omega_m**2)
    delta_c = target.delta1 + g0 * q0
    delta_d = target.delta2 - g0 * q0
    eps_c = math.sqrt(n1 * (target.kappa1**2 + target.delta1**2))
    eps_d = math.sqrt(n2 * (target.kappa2**2 + target.delta2**2))
    phys = PhysicalParams(
        omega_m=target.omega_m,
        gamma_m=target.gamma_m,
        kappa1=target.kappa1,
        kappa2=target.kappa2,
        g0=g0,
        delta_c=delta_c,
        delta_d=delta_d,
        eps_c=eps_c,
        eps_d=eps_d,
        eps_p=eps_p,
        m=m,
        hbar=hbar,
    )

    roots = steady_state(phys)
    nearest = min(range(len(roots)), key=lambda i: abs(roots[i].q0 - q0))
    got = reduced_from_physical(phys, branch=nearest)
    scale_b = max(target.beta1, target.beta2, 1e-300)
    scale_d = max(abs(target.delta1), abs(target.delta2), target.omega_m)
    err = max(
        abs(got.beta1 - target.beta1) / scale_b,
        abs(got.beta2 - target.beta2) / scale_b,
        abs(got.delta1 - target.delta1) / scale_d,
        abs(got.delta2 - target.delta2) / scale_d,
    )
    if err > rtol:
        raise NoConvergence(
            f"inverse map verification failed: relative residual {err:.3e}"
        )
    return phys
