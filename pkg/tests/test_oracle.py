import math
from dataclasses import replace

import numpy as np
import pytest

from omitlab import (
    Blowup,
    IllConditioned,
    PhysicalParams,
    drive_for_target,
    extract_sidebands,
    integrate,
    validate_perturbative,
)
from omitlab.oracle import max_stable_dt, transient_time, write_trajectory_csv
from omitlab.params import adiabatic_branch, steady_state
from omitlab.response import sideband_solve_physical

S = 1e-4  # frequency scale for desk-speed runs


@pytest.fixture(scope="module")
def probe_phys(request):
    # scaled operating point realizing the canonical window parameters
    from omitlab import SystemParams

    target = SystemParams(
        omega_m=1e4, gamma_m=1.0, kappa1=1e4, kappa2=1e4,
        delta1=1e4, delta2=1e4, beta1=3e4, beta2=1250.0,
    ).scaled(S)
    phys = drive_for_target(target, g0=1e-3)
    return replace(phys, eps_p=1e-3 * phys.eps_c)


class TestIntegrate:
    def test_steady_state_is_fixed_point(self, probe_phys):
        # probe off, start at the algebraic root: the flow must stay put
        phys = replace(probe_phys, eps_p=0.0)
        roots = steady_state(phys)
        ss = roots[adiabatic_branch(phys)]
        dt = 0.45 * max_stable_dt(phys)
        traj = integrate(phys, 0.0, 2000.0 * dt, dt)
        assert abs(traj.q[-1] - ss.q0) <= 1e-6 * max(abs(ss.q0), 1.0)
        assert abs(traj.a1[-1] - ss.a10) <= 1e-6 * abs(ss.a10)
        assert abs(traj.a2[-1] - ss.a20) <= 1e-6 * abs(ss.a20)

    def test_time_axis_no_drift(self, probe_phys):
        dt = 0.45 * max_stable_dt(probe_phys)
        traj = integrate(probe_phys, 0.0, 500.0 * dt, dt, t_start=3.0)
        t = traj.t
        assert t[0] == 3.0
        assert t[1] - t[0] == pytest.approx(dt, rel=1e-15)
        assert np.all(np.diff(t) > 0)

    def test_rejects_oversized_dt(self, probe_phys):
        dt = 2.0 * max_stable_dt(probe_phys)
        with pytest.raises(ValueError, match="resolution bound"):
            integrate(probe_phys, 0.0, 100.0, dt)

    def test_blowup_raises(self, probe_phys):
        dt = 0.45 * max_stable_dt(probe_phys)
        with pytest.raises(Blowup):
            integrate(probe_phys, 0.0, 5000.0 * dt, dt, y0=(0.0,) * 6, cap=1e-6)

    def test_csv_dump(self, probe_phys, tmp_path):
        dt = 0.45 * max_stable_dt(probe_phys)
        traj = integrate(probe_phys, 0.0, 50.0 * dt, dt)
        path = tmp_path / "traj.csv"
        write_trajectory_csv(traj, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,re_a1,im_a1,re_a2,im_a2,q,p"
        assert len(lines) == len(traj) + 1


class TestExtractSidebands:
    def test_recovers_synthetic_signal(self, probe_phys):
        # build a trajectory-shaped record from a known three-tone signal
        from omitlab.oracle import Trajectory

        delta = probe_phys.omega_m * 1.01
        eps_p = probe_phys.eps_p
        dt = 0.45 * max_stable_dt(probe_phys, delta)
        n = int((transient_time(probe_phys) + 400.0 * math.pi / delta) / dt)
        t = dt * np.arange(n)
        c0, cp, cm = 2.0 - 1.0j, 0.3 + 0.1j, -0.05 + 0.02j
        a1 = c0 + eps_p * (cp * np.exp(-1j * delta * t) + cm * np.exp(1j * delta * t))
        traj = Trajectory(
            t0=0.0, dt=dt, a1=a1, a2=np.zeros(n, complex),
            q=np.zeros(n), p=np.zeros(n), params=probe_phys, delta=delta,
        )
        fit = extract_sidebands(traj, delta, eps_p)
        assert fit.a10_fit == pytest.approx(c0, rel=1e-9)
        assert fit.a1p_fit == pytest.approx(cp, rel=1e-9)
        assert fit.a1m_fit == pytest.approx(cm, rel=1e-9)
        assert fit.residual_rms < 1e-10

    def test_short_window_ill_conditioned(self, probe_phys):
        delta = probe_phys.omega_m
        dt = 0.45 * max_stable_dt(probe_phys, delta)
        traj = integrate(probe_phys, delta, 100.0 * dt, dt)
        with pytest.raises(IllConditioned):
            extract_sidebands(traj, delta, probe_phys.eps_p, window=(0.0, 1.0 / delta))


class TestValidation:
    def test_matches_algebra_off_window(self, probe_phys):
        # one detuning a couple of linewidths from the window
        delta = probe_phys.omega_m + 2e-3
        report = validate_perturbative(probe_phys, [delta])
        assert report.passed, report.entries
        assert report.max_error < 1e-2

    def test_error_is_discretization_limited(self, probe_phys):
        # halving dt shrinks the residual by roughly 2^4
        delta = probe_phys.omega_m + 2e-3
        dt = 0.9 * max_stable_dt(probe_phys, delta)
        coarse = validate_perturbative(probe_phys, [delta], dt=dt)
        fine = validate_perturbative(probe_phys, [delta], dt=dt / 2.0)
        assert coarse.max_error / fine.max_error > 8.0

    def test_requires_probe(self, probe_phys):
        with pytest.raises(ValueError):
            validate_perturbative(replace(probe_phys, eps_p=0.0), [1.0])

    def test_failures_collected_not_raised(self, probe_phys):
        # a fixed dt valid near the window is over the bound at delta = 1e9,
        # so that point records an error entry instead of aborting the sweep
        delta_good = probe_phys.omega_m + 2e-3
        dt = 0.45 * max_stable_dt(probe_phys, delta_good)
        report = validate_perturbative(probe_phys, [delta_good, 1e9], dt=dt)
        assert report.entries[0][1] is not None
        assert report.entries[1][1] is None
        assert "ValueError" in report.entries[1][2]
        assert not report.passed
