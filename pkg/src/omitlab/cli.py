"""Command-line front end.

    omit-lab <task> --config <file> [--out <path>] [--format csv|json]
    omit-lab reproduce <figN> [--out <dir>]

Tasks: spectrum, window, width, delay, absorption, simulate, reproduce.
Exit codes: 0 success, 2 config validation error, 3 solver error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys as _sys
from pathlib import Path

from . import figures as _figures
from .errors import ConfigError, OmitLabError
from .oracle import extract_sidebands, integrate, write_trajectory_csv
from .params import PhysicalParams, SystemParams, reduced_from_physical
from .response import spectrum
from .slowlight import delay_at_window, group_delay, max_delay_scan
from .window import (
    absorption_at_resonance,
    perfect_window_general,
    perfect_window_large_k2,
    window_width_equal_kappa,
    window_width_numeric,
)

TASKS = ("spectrum", "window", "width", "delay", "absorption", "simulate", "reproduce")

_REDUCED_FIELDS = {
    "omega_m", "gamma_m", "kappa1", "kappa2", "delta1", "delta2", "beta1", "beta2",
}
_PHYSICAL_FIELDS = {
    "omega_m", "gamma_m", "kappa1", "kappa2", "g0", "m", "hbar",
    "delta_c", "delta_d", "eps_c", "eps_d", "eps_p",
}


def _fmt(v: float) -> str:
    return format(v, ".12g")


def _load_config(path: str, task: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config: top-level document must be an object")
    if "task" in cfg and cfg["task"] != task:
        raise ConfigError(
            f"task: config declares {cfg['task']!r} but the command is {task!r}"
        )
    mode = cfg.get("mode")
    if mode not in ("reduced", "physical"):
        raise ConfigError(f"mode: must be 'reduced' or 'physical', got {mode!r}")
    params = cfg.get("params")
    if not isinstance(params, dict):
        raise ConfigError("params: missing or not an object")
    allowed = _REDUCED_FIELDS if mode == "reduced" else _PHYSICAL_FIELDS
    for key in params:
        if key not in allowed:
            raise ConfigError(f"params.{key}: not allowed in {mode} mode")
    return cfg


def _system_params(cfg: dict) -> SystemParams:
    try:
        if cfg["mode"] == "reduced":
            return SystemParams(**cfg["params"])
        phys = PhysicalParams(**cfg["params"])
        return reduced_from_physical(phys, branch=cfg.get("branch"))
    except TypeError as exc:
        raise ConfigError(f"params: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from exc


def _grid(cfg: dict) -> tuple[float, float, int]:
    grid = cfg.get("grid")
    if not isinstance(grid, dict):
        raise ConfigError("grid: missing or not an object")
    try:
        x_min, x_max, n = float(grid["x_min"]), float(grid["x_max"]), int(grid["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"grid: {exc}") from exc
    if n < 2 or not x_min < x_max:
        raise ConfigError("grid: need n >= 2 and x_min < x_max")
    return x_min, x_max, n


def _write_rows(path: Path, fmt: str, header: list[str], rows: list[list[float]]):
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(v) for v in row])
    else:
        doc = {"columns": header, "rows": [[_fmt(v) for v in row] for row in rows]}
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")


def _write_record(path: Path, fmt: str, record: dict):
    if fmt == "csv":
        keys = list(record)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(keys)
            w.writerow(
                [_fmt(v) if isinstance(v, float) else v for v in record.values()]
            )
    else:
        out = {k: (_fmt(v) if isinstance(v, float) else v) for k, v in record.items()}
        with open(path, "w") as fh:
            json.dump(out, fh, indent=1, sort_keys=True)
            fh.write("\n")


def _run_spectrum(cfg: dict, out: Path, fmt: str) -> str:
    sysp = _system_params(cfg)
    x_min, x_max, n = _grid(cfg)
    mode = cfg.get("response", "full")
    if mode not in ("full", "simplified"):
        raise ConfigError(f"response: must be 'full' or 'simplified', got {mode!r}")
    pts = spectrum(sysp, x_min, x_max, n, mode=mode)
    _write_rows(
        out,
        fmt,
        ["x", "re_epsT", "im_epsT", "abs_epsT"],
        [[p.x, p.re, p.im, abs(p.eps_T)] for p in pts],
    )
    i_min = min(range(n), key=lambda i: pts[i].re)
    return f"spectrum: n={n} min_Re_epsT={_fmt(pts[i_min].re)} at x={_fmt(pts[i_min].x)}"


def _run_window(cfg: dict, out: Path, fmt: str) -> str:
    sysp = _system_params(cfg)
    method = cfg.get("method", "numeric")
    if method == "analytic":
        win = perfect_window_large_k2(sysp)
    elif method == "numeric":
        win = perfect_window_general(sysp)
    else:
        raise ConfigError(f"method: must be 'analytic' or 'numeric', got {method!r}")
    record = {
        "x_w": win.x_w,
        "beta2": win.beta2,
        "xi": win.xi,
        "method": win.method,
    }
    if win.eta is not None:
        record["eta"] = win.eta
    _write_record(out, fmt, record)
    return f"window: x_w={_fmt(win.x_w)} beta2={_fmt(win.beta2)} method={win.method}"


def _run_width(cfg: dict, out: Path, fmt: str) -> str:
    sysp = _system_params(cfg)
    win = perfect_window_general(sysp)
    numeric = window_width_numeric(sysp, win)
    record = {"x_w": win.x_w, "beta2": win.beta2, "width_numeric": numeric}
    if sysp.kappa1 == sysp.kappa2:
        record["width_analytic"] = window_width_equal_kappa(sysp)
    _write_record(out, fmt, record)
    parts = [f"width={_fmt(numeric)}"]
    if "width_analytic" in record:
        parts.append(f"width_analytic={_fmt(record['width_analytic'])}")
    return "width: " + " ".join(parts) + f" x_w={_fmt(win.x_w)}"


def _run_delay(cfg: dict, out: Path, fmt: str) -> str:
    sysp = _system_params(cfg)
    x_min, x_max, n = _grid(cfg)
    import numpy as np

    rows = []
    for x in np.linspace(x_min, x_max, n):
        rows.append([float(x), group_delay(sysp, float(x)).tau])
    _write_rows(out, fmt, ["x", "tau"], rows)
    x_star, tau_star = max_delay_scan(sysp, x_min, x_max, n)
    return f"delay: tau_max={_fmt(tau_star)} at x={_fmt(x_star)}"


def _run_absorption(cfg: dict, out: Path, fmt: str) -> str:
    sysp = _system_params(cfg)
    eps0 = absorption_at_resonance(sysp)
    _write_record(out, fmt, {"re_epsT0": eps0.real, "im_epsT0": eps0.imag})
    return f"absorption: Re_epsT(0)={_fmt(eps0.real)}"


def _run_simulate(cfg: dict, out: Path, fmt: str) -> str:
    if cfg["mode"] != "physical":
        raise ConfigError("mode: simulate requires physical mode")
    try:
        phys = PhysicalParams(**cfg["params"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"params: {exc}") from exc
    sim = cfg.get("simulate")
    if not isinstance(sim, dict):
        raise ConfigError("simulate: missing or not an object")
    try:
        delta, t_end, dt = float(sim["delta"]), float(sim["t_end"]), float(sim["dt"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"simulate: {exc}") from exc
    try:
        traj = integrate(phys, delta, t_end, dt)
    except ValueError as exc:
        raise ConfigError(f"simulate: {exc}") from exc
    if sim.get("dump"):
        write_trajectory_csv(traj, sim["dump"])
    if phys.eps_p > 0:
        fit = extract_sidebands(traj, delta, phys.eps_p)
        _write_record(
            out,
            fmt,
            {
                "re_a1p": fit.a1p_fit.real,
                "im_a1p": fit.a1p_fit.imag,
                "re_epsT": 2.0 * phys.kappa1 * fit.a1p_fit.real,
                "im_epsT": 2.0 * phys.kappa1 * fit.a1p_fit.imag,
                "residual_rms": fit.residual_rms,
            },
        )
        return (
            f"simulate: Re_epsT={_fmt(2.0 * phys.kappa1 * fit.a1p_fit.real)} "
            f"residual_rms={_fmt(fit.residual_rms)}"
        )
    _write_record(
        out,
        fmt,
        {
            "q_final": float(traj.q[-1]),
            "re_a1_final": float(traj.a1[-1].real),
            "im_a1_final": float(traj.a1[-1].imag),
        },
    )
    return f"simulate: probe off, q_final={_fmt(float(traj.q[-1]))}"


def _summary_values(figure: str) -> dict[str, float]:
    curves = _figures.figure_curves(figure)
    vals: dict[str, float] = {}
    if figure == "fig2":
        win = perfect_window_large_k2(curves[0][1])
        vals["x_w"] = win.x_w
        vals["beta2"] = win.beta2
        vals["width"] = window_width_equal_kappa(curves[0][1])
    elif figure in ("fig3", "fig4"):
        for label, sysp in curves:
            win = perfect_window_large_k2(sysp)
            vals[f"x_w_{label}"] = win.x_w
            vals[f"beta2_{label}"] = win.beta2
            vals[f"width_{label}"] = window_width_equal_kappa(sysp)
    elif figure == "fig5":
        win = perfect_window_general(curves[0][1])
        vals["x_w"] = win.x_w
        vals["beta2"] = win.beta2
    elif figure in ("fig6", "fig7"):
        for label, sysp in curves:
            vals[f"tau_max_{label}"] = delay_at_window(sysp)
    elif figure == "fig8":
        for label, sysp in curves:
            vals[f"epsT0_{label}"] = absorption_at_resonance(sysp).real
    elif figure == "fig9":
        win = perfect_window_general(curves[0][1])
        vals["x_w"] = win.x_w
        vals["beta2"] = win.beta2
        vals["epsT0_red-solid"] = absorption_at_resonance(curves[1][1]).real
    return vals


def run_reproduce(figure: str, out_dir: Path) -> int:
    """Reproduce one figure: plot-data CSVs plus PASS/FAIL check lines."""
    spec = _figures.figure_spec(figure)
    curves = _figures.figure_curves(figure)
    grid = spec["grid"]
    quantity = spec["quantity"]
    out_dir.mkdir(parents=True, exist_ok=True)
    import numpy as np

    for label, sysp in curves:
        path = out_dir / f"{figure}_{label}.csv"
        if quantity == "tau":
            rows = [
                [float(x), group_delay(sysp, float(x)).tau]
                for x in np.linspace(grid["x_min"], grid["x_max"], grid["n"])
            ]
            _write_rows(path, "csv", ["x", "tau"], rows)
        else:
            pts = spectrum(sysp, grid["x_min"], grid["x_max"], grid["n"], mode="simplified")
            _write_rows(
                path,
                "csv",
                ["x", "re_epsT", "im_epsT", "abs_epsT"],
                [[p.x, p.re, p.im, abs(p.eps_T)] for p in pts],
            )

    results = _figures.run_checks(figure)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.figure} {r.name}: {r.detail}")
    summary = " ".join(f"{k}={_fmt(v)}" for k, v in _summary_values(figure).items())
    all_ok = all(r.passed for r in results)
    print(f"{figure}: {summary} checks={'PASS' if all_ok else 'FAIL'}")
    return 0 if all_ok else 1


_TASK_RUNNERS = {
    "spectrum": _run_spectrum,
    "window": _run_window,
    "width": _run_width,
    "delay": _run_delay,
    "absorption": _run_absorption,
    "simulate": _run_simulate,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="omit-lab",
        description="Optical response of a two-cavity optomechanical system",
    )
    sub = parser.add_subparsers(dest="task", required=True)
    for task in _TASK_RUNNERS:
        p = sub.add_parser(task)
        p.add_argument("--config", required=True)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    p = sub.add_parser("reproduce")
    p.add_argument("figure", choices=_figures.FIGURE_IDS)
    p.add_argument("--out", default=".")

    args = parser.parse_args(argv)

    try:
        if args.task == "reproduce":
            return run_reproduce(args.figure, Path(args.out))
        cfg = _load_config(args.config, args.task)
        out_cfg = cfg.get("output", {})
        fmt = args.format or out_cfg.get("format", "csv")
        out = Path(args.out or out_cfg.get("path") or f"{args.task}.{fmt}")
        summary = _TASK_RUNNERS[args.task](cfg, out, fmt)
        print(summary)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return 2
    except OmitLabError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=_sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
