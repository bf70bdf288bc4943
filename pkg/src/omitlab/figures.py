"""Built-in figure parameter sets and their reproduction checks.

The parameter tables are shipped as a JSON resource so the CLI and the test
suite share one source of truth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import UnknownFigure
from .params import SystemParams
from .response import quadrature, response_simplified
from .slowlight import delay_at_window, group_delay, max_delay_scan
from .window import (
    absorption_at_resonance,
    perfect_window_general,
    perfect_window_large_k2,
    window_width_equal_kappa,
)

__all__ = ["FIGURE_IDS", "CheckResult", "figure_spec", "figure_curves", "run_checks"]

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9")


@dataclass(frozen=True)
class CheckResult:
    figure: str
    name: str
    passed: bool
    detail: str


def _load_table() -> dict:
    with resources.files("omitlab.data").joinpath("figures.json").open() as fh:
        return json.load(fh)


_TABLE: dict | None = None


def figure_spec(figure: str) -> dict:
    global _TABLE
    if _TABLE is None:
        _TABLE = _load_table()
    try:
        return _TABLE[figure]
    except KeyError:
        raise UnknownFigure(
            f"{figure!r}: known figures are {', '.join(FIGURE_IDS)}"
        ) from None


def figure_curves(figure: str) -> list[tuple[str, SystemParams]]:
    spec = figure_spec(figure)
    return [(c["label"], SystemParams(**c["params"])) for c in spec["curves"]]


def _run_check(figure: str, check: dict, curves) -> CheckResult:
    kind = check["kind"]
    if kind in ("max_delay_ordering", "absorption_ordering"):
        name = f"{kind}[{check['larger']}>{check['smaller']}]"
    else:
        name = f"{kind}[curve {check.get('curve', 0)}]"

    def result(passed: bool, detail: str) -> CheckResult:
        return CheckResult(figure=figure, name=name, passed=passed, detail=detail)

    def within(value: float, expect: float, rtol: float) -> bool:
        return abs(value - expect) <= rtol * abs(expect)

    if kind in ("window_analytic_x", "window_analytic_beta2"):
        sys = curves[check["curve"]][1]
        win = perfect_window_large_k2(sys)
        value = win.x_w if kind.endswith("_x") else win.beta2
        ok = within(value, check["expect"], check["rtol"])
        return result(ok, f"got {value:.6g}, expect {check['expect']:g}")

    if kind in ("window_numeric_x", "window_numeric_beta2"):
        sys = curves[check["curve"]][1]
        win = perfect_window_general(sys)
        value = win.x_w if kind.endswith("_x") else win.beta2
        ok = within(value, check["expect"], check["rtol"])
        return result(ok, f"got {value:.6g}, expect {check['expect']:g}")

    if kind == "width_equal_kappa":
        sys = curves[check["curve"]][1]
        value = window_width_equal_kappa(sys)
        ok = within(value, check["expect"], check["rtol"])
        return result(ok, f"got {value:.6g}, expect {check['expect']:g}")

    if kind == "delay_at_window":
        sys = curves[check["curve"]][1]
        value = delay_at_window(sys)
        ok = within(value, check["expect"], check["rtol"])
        return result(ok, f"got {value:.6g}, expect {check['expect']:g}")

    if kind == "max_delay_at_window":
        sys = curves[check["curve"]][1]
        win = perfect_window_general(sys)
        x_star, _ = max_delay_scan(sys, win.x_w - 20.0, win.x_w + 20.0, 401)
        ok = abs(x_star - win.x_w) <= max(0.02 * abs(win.x_w), 1e-3)
        return result(ok, f"argmax tau at {x_star:.6g}, window at {win.x_w:.6g}")

    if kind == "max_delay_ordering":
        tau = []
        for idx in (check["larger"], check["smaller"]):
            sys = curves[idx][1]
            win = perfect_window_general(sys)
            tau.append(group_delay(sys, win.x_w).tau)
        ok = tau[0] > tau[1]
        return result(ok, f"tau_max {tau[0]:.6g} vs {tau[1]:.6g}")

    if kind == "absorption_at_zero":
        sys = curves[check["curve"]][1]
        value = absorption_at_resonance(sys).real
        ok = within(value, check["expect"], check["rtol"])
        return result(ok, f"got {value:.6g}, expect {check['expect']:g}")

    if kind == "absorption_ordering":
        a = absorption_at_resonance(curves[check["larger"]][1]).real
        b = absorption_at_resonance(curves[check["smaller"]][1]).real
        return result(a > b, f"Re[eps_T(0)] {a:.6g} vs {b:.6g}")

    if kind == "dispersion_slope_negative":
        sys = curves[check["curve"]][1]
        win = perfect_window_large_k2(sys)
        h = 1e-4 * max(sys.gamma_m, 1e-9 * sys.kappa1)
        im = lambda x: quadrature(
            response_simplified(sys, x, check_regime=False), sys.kappa1
        ).imag
        slope = (im(win.x_w + h) - im(win.x_w - h)) / (2.0 * h)
        return result(slope < 0, f"dIm/dx = {slope:.6g} at x_w = {win.x_w:.6g}")

    raise ValueError(f"unknown check kind {kind!r}")


def run_checks(figure: str) -> list[CheckResult]:
    """Evaluate every embedded check of one figure."""
    spec = figure_spec(figure)
    curves = figure_curves(figure)
    return [_run_check(figure, c, curves) for c in spec["checks"]]
