import warnings

import numpy as np
import pytest

from omitlab import (
    BranchOutOfRange,
    PhysicalParams,
    SteadyState,
    SystemParams,
    drive_for_target,
    effective_couplings,
    reduced_from_physical,
    steady_state,
)
from omitlab.params import _residual, adiabatic_branch, cavity_amplitudes
from omitlab.response import quadrature, response_simplified


def make_phys(**kw):
    base = dict(
        omega_m=1.0, gamma_m=0.01, kappa1=0.5, kappa2=0.5,
        g0=0.001, delta_c=1.0, delta_d=1.0,
    )
    base.update(kw)
    return PhysicalParams(**base)


BISTABLE = dict(
    omega_m=1.0, gamma_m=0.01, kappa1=0.2, kappa2=0.3,
    g0=0.2, delta_c=1.0, delta_d=0.5, eps_c=2.0, eps_d=0.0,
)


class TestValidation:
    def test_rejects_degenerate_rates(self):
        with pytest.raises(ValueError):
            make_phys(omega_m=0.0)
        with pytest.raises(ValueError):
            make_phys(kappa1=0.0)
        with pytest.raises(ValueError):
            make_phys(kappa2=0.0)
        with pytest.raises(ValueError):
            make_phys(gamma_m=-1.0)
        with pytest.raises(ValueError):
            SystemParams(
                omega_m=1, gamma_m=0, kappa1=1, kappa2=1,
                delta1=1, delta2=1, beta1=-1, beta2=0,
            )

    def test_weak_coupling_warning(self):
        with pytest.warns(UserWarning, match="weak"):
            make_phys(g0=0.5)

    def test_strong_probe_warning(self):
        with pytest.warns(UserWarning, match="probe"):
            make_phys(eps_c=1.0, eps_p=0.5)


class TestEffectiveCouplings:
    def test_coupling_off(self):
        phys = make_phys(g0=0.0)
        ss = SteadyState(q0=0.0, a10=3 + 4j, a20=1j)
        assert effective_couplings(phys, ss) == (0.0, 0.0)

    def test_direct_substitution(self):
        phys = make_phys(omega_m=2.0, g0=1.0, delta_c=2.0, delta_d=2.0)
        ss = SteadyState(q0=0.0, a10=2.0 + 0j, a20=0j)
        b1, b2 = effective_couplings(phys, ss)
        assert b1 == pytest.approx(1.0, rel=1e-15)
        assert b2 == 0.0

    def test_fig2_magnitude(self):
        # |a10|^2 = 6e8 at omega_m = 1e4, g0 = hbar = m = 1 gives beta1 = 3e4
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            phys = make_phys(omega_m=1e4, g0=1.0, delta_c=1e4, delta_d=1e4)
        ss = SteadyState(q0=0.0, a10=np.sqrt(6e8) + 0j, a20=0j)
        b1, _ = effective_couplings(phys, ss)
        assert b1 == pytest.approx(3e4, rel=1e-12)

    def test_phase_rotation_invariance(self, rng):
        phys = make_phys()
        for _ in range(20):
            a10 = rng.normal() + 1j * rng.normal()
            a20 = rng.normal() + 1j * rng.normal()
            phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
            b = effective_couplings(phys, SteadyState(0.0, a10, a20))
            br = effective_couplings(phys, SteadyState(0.0, a10 * phase, a20 * phase))
            assert b[0] == pytest.approx(br[0], rel=1e-12)
            assert b[1] == pytest.approx(br[1], rel=1e-12)


class TestSteadyState:
    def test_undriven(self):
        roots = steady_state(make_phys())
        assert len(roots) == 1
        assert roots[0].q0 == 0.0
        assert roots[0].a10 == 0j
        assert roots[0].a20 == 0j
        assert roots[0].p0 == 0.0

    def test_symmetric_cancellation(self):
        phys = make_phys(eps_c=0.3, eps_d=0.3)
        roots = steady_state(phys)
        assert any(abs(r.q0) < 1e-12 for r in roots)

    def test_amplitudes_reproducible_bitwise(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            phys = PhysicalParams(**BISTABLE)
        for ss in steady_state(phys):
            a10, a20 = cavity_amplitudes(phys, ss.q0)
            assert a10 == ss.a10 and a20 == ss.a20

    def test_residual_below_tolerance(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            phys = PhysicalParams(**BISTABLE)
        for ss in steady_state(phys):
            assert abs(_residual(phys, ss.q0)) <= 1e-10 * max(abs(ss.q0), 1.0)

    def test_matches_dense_scan_oracle(self):
        # brute-force sign-change scan with >= 1e5 points, asymmetric drive
        phys = make_phys(eps_c=0.8, eps_d=0.0, g0=0.01)
        roots = [r.q0 for r in steady_state(phys)]
        q = np.linspace(-0.1, 0.1, 200001)
        f = np.array([_residual(phys, qi) for qi in q])
        crossings = q[:-1][np.sign(f[:-1]) * np.sign(f[1:]) < 0]
        assert len(crossings) == len(roots)
        for c, r in zip(crossings, sorted(roots)):
            assert abs(c - r) < 2 * (q[1] - q[0])

    def test_bistable_root_set(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            phys = PhysicalParams(**BISTABLE)
        roots = steady_state(phys)
        assert len(roots) == 3
        assert [r.q0 for r in roots] == sorted(r.q0 for r in roots)
        assert adiabatic_branch(phys) == 0

    def test_odd_root_count(self, rng):
        for _ in range(25):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                phys = make_phys(
                    omega_m=1.0,
                    kappa1=10.0 ** rng.uniform(-1, 0),
                    kappa2=10.0 ** rng.uniform(-1, 0),
                    g0=10.0 ** rng.uniform(-2, -0.5),
                    delta_c=rng.uniform(-1.5, 1.5),
                    delta_d=rng.uniform(-1.5, 1.5),
                    eps_c=10.0 ** rng.uniform(-1, 1),
                    eps_d=10.0 ** rng.uniform(-1, 1),
                )
            assert len(steady_state(phys)) % 2 == 1


class TestReducedMap:
    def test_undriven_passthrough(self):
        phys = make_phys(delta_c=0.8, delta_d=1.2)
        sys = reduced_from_physical(phys)
        assert sys.beta1 == 0.0 and sys.beta2 == 0.0
        assert sys.delta1 == 0.8 and sys.delta2 == 1.2

    def test_symmetric_case_exact(self):
        phys = make_phys(eps_c=0.3, eps_d=0.3)
        sys = reduced_from_physical(phys)
        assert sys.delta1 == phys.delta_c
        assert sys.delta2 == phys.delta_d

    def test_branch_out_of_range(self):
        phys = make_phys(eps_c=0.3)
        with pytest.raises(BranchOutOfRange):
            reduced_from_physical(phys, branch=5)

    def test_round_trip(self, fig2_sys):
        phys = drive_for_target(fig2_sys, g0=1e-2)
        sys = reduced_from_physical(phys)
        assert sys.beta1 == pytest.approx(fig2_sys.beta1, rel=1e-9)
        assert sys.beta2 == pytest.approx(fig2_sys.beta2, rel=1e-9)
        assert sys.delta1 == pytest.approx(fig2_sys.delta1, rel=1e-9)
        assert sys.delta2 == pytest.approx(fig2_sys.delta2, rel=1e-9)


class TestDriveForTarget:
    def test_zero_targets(self, fig2_sys):
        target = fig2_sys.with_(beta1=0.0, beta2=0.0)
        phys = drive_for_target(target, g0=1e-2)
        assert phys.eps_c == 0.0 and phys.eps_d == 0.0

    def test_symmetric_targets(self):
        target = SystemParams(
            omega_m=1.0, gamma_m=1e-4, kappa1=0.5, kappa2=0.5,
            delta1=1.0, delta2=1.0, beta1=1e-3, beta2=1e-3,
        )
        phys = drive_for_target(target, g0=1e-3)
        assert phys.eps_c == pytest.approx(phys.eps_d, rel=1e-12)

    def test_fig2_forward_consistency(self, fig2_sys):
        phys = drive_for_target(fig2_sys, g0=1e-2)
        sys = reduced_from_physical(phys)
        assert sys.beta1 == pytest.approx(3e4, rel=1e-9)
        assert sys.beta2 == pytest.approx(1250.0, rel=1e-9)


class TestScaleInvariance:
    @pytest.mark.parametrize("s", [1e-4, 1e4])
    def test_eps_t_invariant(self, fig2_sys, s):
        for x in (-300.0, -1.25, 0.0, 42.0):
            base = quadrature(response_simplified(fig2_sys, x), fig2_sys.kappa1)
            scaled = quadrature(
                response_simplified(fig2_sys.scaled(s), x * s),
                fig2_sys.kappa1 * s,
            )
            assert scaled == pytest.approx(base, rel=1e-12)
