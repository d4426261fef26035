"""Figure-data recipes: one directory of CSV files plus a manifest per figure.

Each recipe regenerates the data behind one published-style panel set with
its parameter values baked in.  Recipes only produce numbers; rendering is a
separate package that consumes the manifest.

Manifest schema (JSON):
  figure_id      str
  title          str
  assumed        bool    true where the curve parameter list is a declared
                         default rather than a stated value
  overrides      dict    any integration settings changed on the command line
  panels         list of
    name             str
    xlabel, ylabel   str
    curves           list of {file, x, y, label}
    reference_lines  list of {orientation: "h"|"v", value, label, style}
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from . import analytics
from .config import ScenarioConfig
from .hamiltonians import adiabatic_spectrum, crossing_times
from .output import write_csv, write_json
from .runner import final_values, run_scenario

__all__ = ["FIGURE_IDS", "make_figure"]

FIGURE_IDS = (
    "1a", "1b", "1c", "1d",
    "2a", "2b", "2c",
    "3a", "3b", "3c",
    "4a", "4b", "5",
    "6a", "6b", "7",
)

PI = math.pi


def _series_csv(path: str, series) -> None:
    write_csv(
        path,
        ["t", "p_lz", "e_l", "q", "nbar", "norm"],
        zip(series.t, series.p_lz, series.e_l, series.q, series.nbar, series.norm),
    )


def _curve(file: str, x: str, y: str, label: str) -> dict:
    return {"file": file, "x": x, "y": y, "label": label}


def _href(value: float, label: str) -> dict:
    return {"orientation": "h", "value": float(value), "label": label, "style": "dashed"}


def _vref(value: float, label: str) -> dict:
    return {"orientation": "v", "value": float(value), "label": label, "style": "dashed"}


def _panel(name, xlabel, ylabel, curves, reference_lines=()):
    return {
        "name": name,
        "xlabel": xlabel,
        "ylabel": ylabel,
        "curves": list(curves),
        "reference_lines": list(reference_lines),
    }


def _base_run(**kw) -> ScenarioConfig:
    kw.setdefault("samples", 1001)
    return ScenarioConfig(**kw)


def _run_series(cfg: ScenarioConfig):
    return run_scenario(cfg)


def _run_all(cfgs, jobs: int):
    if jobs > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_series, cfgs))
    return [_run_series(c) for c in cfgs]


def _spectrum_recipe(out, model: str, delta: float, omega: float, levels_nmax: int,
                     t_lo: float, t_hi: float):
    cfg = ScenarioConfig(model=model, delta=delta, omega=omega, nmax=levels_nmax)
    t = np.linspace(t_lo, t_hi, 401)
    slices = adiabatic_spectrum(cfg.params(), t, levels_nmax)
    n_levels = len(slices[0].eigenvalues)
    header = ["t"] + [f"e_{k}" for k in range(n_levels)]
    rows = [[s.t, *s.eigenvalues] for s in slices]
    write_csv(os.path.join(out, "spectrum.csv"), header, rows)
    curves = [_curve("spectrum.csv", "t", f"e_{k}", f"level {k}") for k in range(n_levels)]
    return curves


def _apply_overrides(cfg: ScenarioConfig, overrides: dict) -> ScenarioConfig:
    return replace(cfg, **overrides) if overrides else cfg


def make_figure(figure_id: str, out_dir: str, overrides: dict | None = None,
                jobs: int = 1) -> str:
    """Write the CSVs and manifest for one figure id; returns the manifest path.

    ``overrides`` may carry integration settings (t0, t1, rel_tol, abs_tol,
    samples, nmax) applied on top of every scenario in the recipe; they are
    recorded in the manifest.
    """
    if figure_id not in FIGURE_IDS:
        raise KeyError(f"unknown figure id {figure_id!r}; valid: {', '.join(FIGURE_IDS)}")
    overrides = dict(overrides or {})
    out = os.path.join(out_dir, f"figure_{figure_id}")
    os.makedirs(out, exist_ok=True)

    recipe = _RECIPES[figure_id]
    manifest = recipe(out, overrides, jobs)
    manifest["figure_id"] = figure_id
    manifest["overrides"] = {
        k: (None if isinstance(v, float) and math.isinf(v) else v)
        for k, v in overrides.items()
    }
    manifest.setdefault("assumed", False)
    path = os.path.join(out, "manifest.json")
    write_json(path, manifest)
    return path


# ---------------------------------------------------------------- recipes

def _fig_1a(out, ov, jobs):
    curves = _spectrum_recipe(out, "rwa", delta=0.5, omega=10.0, levels_nmax=4,
                              t_lo=-30.0, t_hi=30.0)
    return {
        "title": "Adiabatic spectrum, co-rotating coupling, Delta=0.5, omega=10",
        "panels": [_panel("spectrum", "t", "energy", curves)],
    }


def _fig_1b(out, ov, jobs):
    lams = [0.0, 1.0, 2.0, 4.0]
    cfgs = [
        _apply_overrides(
            _base_run(model="rwa", delta=0.5, initial_kind="cat",
                      alpha2=lam, theta=PI / 2.0),
            ov,
        )
        for lam in lams
    ]
    curves, refs = [], []
    for lam, series in zip(lams, _run_all(cfgs, jobs)):
        fname = f"run_alpha2_{lam:g}.csv"
        _series_csv(os.path.join(out, fname), series)
        curves.append(_curve(fname, "t", "p_lz", f"|alpha|^2 = {lam:g}"))
        refs.append(_href(analytics.plz_ys(lam, 0.5), f"closed form, |alpha|^2 = {lam:g}"))
    return {
        "title": "P_LZ(t), Yurke-Stoler state, Delta=0.5",
        "assumed": True,
        "panels": [_panel("p_lz", "t", "P_LZ", curves, refs)],
    }


def _fig_1c(out, ov, jobs):
    lam = np.linspace(0.0, 8.0, 161)
    curves = []
    for delta in (0.1, 0.2, 0.5):
        vals = [analytics.plz_ys(x, delta) for x in lam]
        fname = f"analytic_delta_{delta:g}.csv"
        write_csv(os.path.join(out, fname), ["alpha2", "p_lz"], zip(lam, vals))
        curves.append(_curve(fname, "alpha2", "p_lz", f"Delta = {delta:g}"))
    return {
        "title": "P_LZ(infinity) vs |alpha|^2, Yurke-Stoler state",
        "panels": [_panel("p_lz_vs_alpha2", "|alpha|^2", "P_LZ(infinity)", curves)],
    }


def _fig_1d(out, ov, jobs):
    theta = np.linspace(0.0, 2.0 * PI, 181)
    curves = []
    for lam in (0.3, 1.0, 2.0):
        vals = [analytics.plz_cat_rwa(lam, th, 0.5) for th in theta]
        fname = f"analytic_alpha2_{lam:g}.csv"
        write_csv(os.path.join(out, fname), ["theta", "p_lz"], zip(theta, vals))
        curves.append(_curve(fname, "theta", "p_lz", f"|alpha|^2 = {lam:g}"))
    return {
        "title": "P_LZ(infinity) vs theta, Delta=0.5",
        "panels": [_panel("p_lz_vs_theta", "theta", "P_LZ(infinity)", curves)],
    }


def _fig_2a(out, ov, jobs):
    lams = [0.0, 1.0, 2.0, 4.0]
    cfgs = [
        _apply_overrides(
            _base_run(model="rwa", delta=0.5, initial_kind="cat",
                      alpha2=lam, theta=PI / 2.0),
            ov,
        )
        for lam in lams
    ]
    curves = []
    for lam, series in zip(lams, _run_all(cfgs, jobs)):
        fname = f"run_alpha2_{lam:g}.csv"
        _series_csv(os.path.join(out, fname), series)
        curves.append(_curve(fname, "t", "e_l", f"|alpha|^2 = {lam:g}"))
    return {
        "title": "Linear entropy E_l(t), Yurke-Stoler state, Delta=0.5",
        "assumed": True,
        "panels": [_panel("e_l", "t", "E_l", curves)],
    }


def _sweep_final_curve(out, fname, xname, xvals, cfgs, jobs, ycol):
    finals = [final_values(s)[ycol] for s in _run_all(cfgs, jobs)]
    write_csv(os.path.join(out, fname), [xname, ycol], zip(xvals, finals))


def _fig_2b(out, ov, jobs):
    lam = np.linspace(0.0, 4.0, 17)
    curves = []
    for delta in (0.2, 0.5, 1.0):
        cfgs = [
            _apply_overrides(
                _base_run(model="rwa", delta=delta, initial_kind="cat",
                          alpha2=float(x), theta=PI / 2.0),
                ov,
            )
            for x in lam
        ]
        fname = f"final_delta_{delta:g}.csv"
        _sweep_final_curve(out, fname, "alpha2", lam, cfgs, jobs, "e_l")
        curves.append(_curve(fname, "alpha2", "e_l", f"Delta = {delta:g}"))
    return {
        "title": "E_l(infinity) vs |alpha|^2, Yurke-Stoler state",
        "panels": [_panel("e_l_vs_alpha2", "|alpha|^2", "E_l(infinity)", curves)],
    }


def _fig_2c(out, ov, jobs):
    theta = np.linspace(0.0, 2.0 * PI, 25)
    curves = []
    for lam in (0.3, 2.0):
        cfgs = [
            _apply_overrides(
                _base_run(model="rwa", delta=0.5, initial_kind="cat",
                          alpha2=lam, theta=float(th)),
                ov,
            )
            for th in theta
        ]
        fname = f"final_alpha2_{lam:g}.csv"
        _sweep_final_curve(out, fname, "theta", theta, cfgs, jobs, "e_l")
        curves.append(_curve(fname, "theta", "e_l", f"|alpha|^2 = {lam:g}"))
    return {
        "title": "E_l(infinity) vs theta, Delta=0.5",
        "panels": [_panel("e_l_vs_theta", "theta", "E_l(infinity)", curves)],
    }


def _fig_3a(out, ov, jobs):
    lams = [0.3, 1.0, 2.0]
    cfgs = [
        _apply_overrides(
            _base_run(model="rwa", delta=0.5, initial_kind="cat",
                      alpha2=lam, theta=PI / 2.0),
            ov,
        )
        for lam in lams
    ]
    curves = []
    for lam, series in zip(lams, _run_all(cfgs, jobs)):
        fname = f"run_alpha2_{lam:g}.csv"
        _series_csv(os.path.join(out, fname), series)
        curves.append(_curve(fname, "t", "q", f"|alpha|^2 = {lam:g}"))
    refs = [_href(0.0, "Poissonian")]
    return {
        "title": "Mandel Q(t), Yurke-Stoler state, Delta=0.5",
        "assumed": True,
        "panels": [_panel("q", "t", "Q", curves, refs)],
    }


def _fig_3b(out, ov, jobs):
    lam = np.linspace(0.05, 4.0, 80)
    curves = []
    for delta in (0.2, 0.5, 1.0):
        vals = [analytics.photon_stats_infty(float(x), PI / 2.0, delta)[2] for x in lam]
        fname = f"analytic_delta_{delta:g}.csv"
        write_csv(os.path.join(out, fname), ["alpha2", "q"], zip(lam, vals))
        curves.append(_curve(fname, "alpha2", "q", f"Delta = {delta:g}"))
    return {
        "title": "Q(infinity) vs |alpha|^2, Yurke-Stoler state",
        "panels": [_panel("q_vs_alpha2", "|alpha|^2", "Q(infinity)", curves,
                          [_href(0.0, "Poissonian")])],
    }


def _fig_3c(out, ov, jobs):
    theta = np.linspace(0.0, 2.0 * PI, 181)
    curves = []
    for lam in (0.3, 2.0):
        vals = [analytics.photon_stats_infty(lam, float(th), 0.5)[2] for th in theta]
        fname = f"analytic_alpha2_{lam:g}.csv"
        write_csv(os.path.join(out, fname), ["theta", "q"], zip(theta, vals))
        curves.append(_curve(fname, "theta", "q", f"|alpha|^2 = {lam:g}"))
    return {
        "title": "Q(infinity) vs theta, Delta=0.5",
        "panels": [_panel("q_vs_theta", "theta", "Q(infinity)", curves,
                          [_href(0.0, "Poissonian")])],
    }


def _fig_4a(out, ov, jobs):
    curves = _spectrum_recipe(out, "full", delta=0.5, omega=10.0, levels_nmax=3,
                              t_lo=-50.0, t_hi=50.0)
    return {
        "title": "Adiabatic spectrum with counter-rotating coupling, Delta=0.5, omega=10",
        "panels": [_panel("spectrum", "t", "energy", curves)],
    }


def _fig_4b(out, ov, jobs):
    lams = [0.0, 1.0, 2.0, 4.0]
    cfgs = [
        _apply_overrides(
            _base_run(model="full", delta=0.5, omega=10.0, initial_kind="cat",
                      alpha2=lam, theta=PI / 2.0),
            ov,
        )
        for lam in lams
    ]
    curves, refs = [], []
    for lam, series in zip(lams, _run_all(cfgs, jobs)):
        fname = f"run_alpha2_{lam:g}.csv"
        _series_csv(os.path.join(out, fname), series)
        curves.append(_curve(fname, "t", "p_lz", f"|alpha|^2 = {lam:g}"))
        refs.append(_href(analytics.plz_ys(lam, 0.5), f"co-rotating closed form, |alpha|^2 = {lam:g}"))
    t_cross, _ = crossing_times(cfgs[0].params())
    refs.append(_vref(t_cross, "second crossing group t = 2 omega / v"))
    return {
        "title": "P_LZ(t) with counter-rotating coupling, Delta=0.5, omega=10",
        "assumed": True,
        "panels": [_panel("p_lz", "t", "P_LZ", curves, refs)],
    }


def _fig_5(out, ov, jobs):
    combos = [(0.1, 1.0), (0.1, 10.0), (0.5, 1.0), (0.5, 10.0)]
    cfgs = [
        _apply_overrides(
            _base_run(model="full", delta=d, omega=w, initial_kind="cat",
                      alpha2=1.0, theta=PI / 2.0),
            ov,
        )
        for d, w in combos
    ]
    panels = []
    for (d, w), series in zip(combos, _run_all(cfgs, jobs)):
        fname = f"run_delta_{d:g}_omega_{w:g}.csv"
        _series_csv(os.path.join(out, fname), series)
        panels.append(_panel(
            f"delta_{d:g}_omega_{w:g}", "t", "P_LZ",
            [_curve(fname, "t", "p_lz", f"Delta = {d:g}, omega = {w:g}")],
            [_vref(2.0 * w, "t = 2 omega / v")],
        ))
    return {
        "title": "P_LZ(t) with counter-rotating coupling, |alpha|^2 = 1",
        "panels": panels,
    }


def _fig_6a(out, ov, jobs):
    lam_num = np.linspace(0.0, 4.0, 9)
    lam_ana = np.linspace(0.0, 4.0, 161)
    curves = []
    for delta in (0.1, 0.2, 0.5):
        cfgs = [
            _apply_overrides(
                _base_run(model="full", delta=delta, omega=10.0, initial_kind="cat",
                          alpha2=float(x), theta=PI / 2.0),
                ov,
            )
            for x in lam_num
        ]
        fname = f"final_delta_{delta:g}.csv"
        _sweep_final_curve(out, fname, "alpha2", lam_num, cfgs, jobs, "p_lz")
        curves.append(_curve(fname, "alpha2", "p_lz", f"numerical, Delta = {delta:g}"))
        vals = [analytics.plz_cat_norwa(float(x), PI / 2.0, delta) for x in lam_ana]
        aname = f"analytic_delta_{delta:g}.csv"
        write_csv(os.path.join(out, aname), ["alpha2", "p_lz"], zip(lam_ana, vals))
        curves.append(_curve(aname, "alpha2", "p_lz",
                             f"independent-crossing closed form, Delta = {delta:g}"))
    return {
        "title": "P_LZ(infinity) vs |alpha|^2 with counter-rotating coupling, omega=10",
        "panels": [_panel("p_lz_vs_alpha2", "|alpha|^2", "P_LZ(infinity)", curves)],
    }


def _fig_6b(out, ov, jobs):
    cfg = _apply_overrides(
        _base_run(model="full", delta=0.1, omega=10.0, initial_kind="cat",
                  alpha2=1.0, theta=PI / 2.0),
        ov,
    )
    series = run_scenario(cfg)
    fname = "run.csv"
    _series_csv(os.path.join(out, fname), series)
    return {
        "title": "Entropy and Mandel Q with counter-rotating coupling, "
                 "|alpha|^2 = 1, Delta=0.1, omega=10",
        "panels": [
            _panel("e_l", "t", "E_l", [_curve(fname, "t", "e_l", "E_l")]),
            _panel("q", "t", "Q", [_curve(fname, "t", "q", "Q")],
                   [_href(0.0, "Poissonian")]),
        ],
    }


def _fig_7(out, ov, jobs):
    omegas = [1.0, 10.0, 20.0]
    cfgs = [
        _apply_overrides(
            _base_run(model="full", delta=0.1, omega=w, initial_kind="thermal",
                      temperature=w),
            ov,
        )
        for w in omegas
    ]
    curves = []
    for w, series in zip(omegas, _run_all(cfgs, jobs)):
        fname = f"run_omega_{w:g}.csv"
        _series_csv(os.path.join(out, fname), series)
        curves.append(_curve(fname, "t", "p_lz", f"omega = {w:g}"))
    # at fixed T/omega both closed forms depend on omega only through T/omega
    refs = [
        _href(analytics.plz_thermal_rwa(1.0, 1.0, 0.1), "co-rotating thermal closed form"),
        _href(analytics.plz_thermal_norwa(1.0, 1.0, 0.1), "independent-crossing thermal closed form"),
        _href(analytics.plz_thermal_norwa_printed(1.0, 1.0, 0.1),
              "independent-crossing thermal closed form, unbalanced variant"),
    ]
    return {
        "title": "Thermal P_LZ(t) with counter-rotating coupling, Delta=0.1, T/omega=1",
        "panels": [_panel("p_lz", "t", "P_LZ", curves, refs)],
    }


_RECIPES = {
    "1a": _fig_1a, "1b": _fig_1b, "1c": _fig_1c, "1d": _fig_1d,
    "2a": _fig_2a, "2b": _fig_2b, "2c": _fig_2c,
    "3a": _fig_3a, "3b": _fig_3b, "3c": _fig_3c,
    "4a": _fig_4a, "4b": _fig_4b, "5": _fig_5,
    "6a": _fig_6a, "6b": _fig_6b, "7": _fig_7,
}
