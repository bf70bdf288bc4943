import numpy as np
import pytest

from omitlab import SystemParams

OM = 1e4


@pytest.fixture
def fig2_sys():
    return SystemParams(
        omega_m=OM, gamma_m=1.0, kappa1=OM, kappa2=OM,
        delta1=OM, delta2=OM, beta1=3e4, beta2=1250.0,
    )


@pytest.fixture
def fig3a_sys():
    return SystemParams(
        omega_m=OM, gamma_m=10.0, kappa1=OM, kappa2=OM,
        delta1=OM, delta2=OM, beta1=3e5, beta2=1.25e4,
    )


@pytest.fixture
def fig3b_sys():
    return SystemParams(
        omega_m=OM, gamma_m=100.0, kappa1=OM, kappa2=OM,
        delta1=OM, delta2=OM, beta1=3e6, beta2=1.25e5,
    )


@pytest.fixture
def fig5_sys():
    return SystemParams(
        omega_m=OM, gamma_m=1.0, kappa1=4e3, kappa2=10.0,
        delta1=OM, delta2=OM, beta1=1e5, beta2=5.91,
    )


@pytest.fixture
def fig8_sys():
    # blue-dashed curve (kappa2 = 10); red-solid is kappa2 = 1
    return SystemParams(
        omega_m=OM, gamma_m=1.0, kappa1=4e3, kappa2=10.0,
        delta1=OM, delta2=OM, beta1=1e5, beta2=100.0,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


# one PASS/FAIL line per acceptance criterion, echoed after the test run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_sys(rng, above_threshold=True) -> SystemParams:
    """Random near-resonance parameter draw, optionally above the window
    threshold 2*beta1*kappa1 > gamma_m*(kappa1^2 + 4*omega_m^2)."""
    om = 10.0 ** rng.uniform(2.0, 5.0)
    k1 = om * 10.0 ** rng.uniform(-1.0, 0.4)
    k2 = om * 10.0 ** rng.uniform(-1.0, 0.4)
    gm = om * 10.0 ** rng.uniform(-5.0, -3.0)
    thresh = gm * (k1**2 + 4.0 * om**2) / (2.0 * k1)
    if above_threshold:
        b1 = thresh * 10.0 ** rng.uniform(0.3, 1.5)
    else:
        b1 = thresh * rng.uniform(0.05, 0.9)
    b2 = b1 * 10.0 ** rng.uniform(-2.0, 0.0)
    return SystemParams(
        omega_m=om, gamma_m=gm, kappa1=k1, kappa2=k2,
        delta1=om * rng.uniform(0.95, 1.05), delta2=om * rng.uniform(0.95, 1.05),
        beta1=b1, beta2=b2,
    )
