"""Compiled-vs-pure-Python RK4 kernel contract tests."""

import numpy as np
import pytest

from omitlab import kernel_backend
from omitlab._rk4_py import integrate_rk4 as rk4_py

try:
    from omitlab._rk4_cy import integrate_rk4 as rk4_cy
except ImportError:
    rk4_cy = None

ARGS = dict(
    kappa1=0.5, kappa2=0.4, delta_c=1.0, delta_d=0.9, g0=0.01,
    m=1.0, hbar=1.0, omega_m=1.0, gamma_m=0.01,
    eps_c=0.8, eps_d=0.3, eps_p=0.008, delta=1.02,
)
Y0 = (0.1, -0.2, 0.05, 0.0, 0.01, 0.0)


def run(kernel, n_steps=4000, dt=0.01, cap=1e12, y0=Y0):
    return kernel(
        ARGS["kappa1"], ARGS["kappa2"], ARGS["delta_c"], ARGS["delta_d"],
        ARGS["g0"], ARGS["m"], ARGS["hbar"], ARGS["omega_m"], ARGS["gamma_m"],
        ARGS["eps_c"], ARGS["eps_d"], ARGS["eps_p"], ARGS["delta"],
        y0, 0.0, dt, n_steps, cap,
    )


def test_backend_reported():
    assert kernel_backend() in ("cython", "python")


def test_python_kernel_shapes_and_ic():
    status, r1, i1, r2, i2, q, p = run(rk4_py, n_steps=100)
    assert status == -1
    for arr in (r1, i1, r2, i2, q, p):
        assert len(arr) == 101
    assert (r1[0], i1[0], r2[0], i2[0], q[0], p[0]) == Y0


def test_python_kernel_deterministic():
    a = run(rk4_py)
    b = run(rk4_py)
    for x, y in zip(a[1:], b[1:]):
        assert np.array_equal(x, y)


def test_blowup_status_index():
    # the status marks the first stepped sample whose magnitude exceeds cap
    cap = 0.25
    status, *_ = run(rk4_py, n_steps=500, cap=cap)
    assert status >= 1
    full = np.stack(run(rk4_py, n_steps=500, cap=1e12)[1:])
    assert np.all(np.abs(full[:, 1:status]) <= cap)
    assert np.abs(full[:, status]).max() > cap


def test_fourth_order_convergence():
    # halving dt should shrink the endpoint error by ~16x
    ref = run(rk4_py, n_steps=64000, dt=0.000625)
    end_ref = np.array([arr[-1] for arr in ref[1:]])

    errs = []
    for n_steps, dt in ((2000, 0.02), (4000, 0.01), (8000, 0.005)):
        got = run(rk4_py, n_steps=n_steps, dt=dt)
        end = np.array([arr[-1] for arr in got[1:]])
        errs.append(np.max(np.abs(end - end_ref)))
    assert errs[0] / errs[1] > 12.0
    assert errs[1] / errs[2] > 12.0


@pytest.mark.skipif(rk4_cy is None, reason="compiled kernel not built")
class TestParity:
    def test_bitwise_close(self):
        a = run(rk4_py)
        b = run(rk4_cy)
        assert a[0] == b[0] == -1
        for x, y in zip(a[1:], b[1:]):
            np.testing.assert_allclose(x, y, rtol=1e-12, atol=1e-14)

    def test_blowup_parity(self):
        a = run(rk4_py, n_steps=200, cap=0.15)
        b = run(rk4_cy, n_steps=200, cap=0.15)
        assert a[0] == b[0]

    def test_compiled_deterministic(self):
        a = run(rk4_cy)
        b = run(rk4_cy)
        for x, y in zip(a[1:], b[1:]):
            assert np.array_equal(x, y)
