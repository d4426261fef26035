"""Command-line front end: run, sweep, figure, analytic.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 unknown figure id.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__, analytics
from .config import ConfigError, ScenarioConfig, build_scenario, parse_config_text
from .fockspace import cat_weights_exact, choose_truncation
from .figures import FIGURE_IDS, make_figure
from .output import fmt, write_csv, write_json
from .propagator import PropagationError
from .runner import SWEEP_HEADER, analytic_reference, run_scenario, sweep_rows

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_UNKNOWN_FIGURE = 4


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lzphoton",
        description="Avoided-crossing sweep dynamics of a two-level system "
                    "coupled to a quantized photon mode.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value scenario file")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--model", choices=["rwa", "full"])
        sp.add_argument("--t0", type=float)
        sp.add_argument("--t1", type=float)
        sp.add_argument("--rel-tol", type=float, dest="rel_tol")
        sp.add_argument("--abs-tol", type=float, dest="abs_tol")
        sp.add_argument("--nmax", type=int)
        sp.add_argument("--samples", type=int)
        sp.add_argument("--jobs", type=int, default=1)

    sp_run = sub.add_parser("run", help="single scenario, time-series CSV")
    common(sp_run)
    sp_sweep = sub.add_parser("sweep", help="parameter sweep, final-value CSV")
    common(sp_sweep)
    sp_fig = sub.add_parser("figure", help="regenerate the data behind one figure")
    sp_fig.add_argument("figure_id")
    common(sp_fig)
    sp_an = sub.add_parser("analytic", help="closed-form tables on stdout")
    sp_an.add_argument("formula", choices=sorted(_FORMULAS))
    sp_an.add_argument("--oracle", action="store_true",
                       help="add a brute-force-sum column and the absolute difference")
    for name in ("delta", "v", "alpha2", "theta", "omega", "T"):
        sp_an.add_argument(f"--{name}", default=None,
                           help=f"{name} value or comma-separated list")
    return p


def _flag_overrides(args) -> dict[str, str]:
    """Map command-line flags onto the dotted config keys they shadow."""
    pairs = [
        ("model", "model", args.model),
        ("integrator.t0", "t0", args.t0),
        ("integrator.t1", "t1", args.t1),
        ("integrator.rel_tol", "rel_tol", args.rel_tol),
        ("integrator.abs_tol", "abs_tol", args.abs_tol),
        ("integrator.samples", "samples", args.samples),
        ("truncation.nmax", "nmax", args.nmax),
    ]
    return {key: str(val) for key, _, val in pairs if val is not None}


def _parse_extras(extras: list[str]) -> dict[str, str]:
    """Accept --dotted.key=value overrides for any config key."""
    out = {}
    for item in extras:
        if not item.startswith("--") or "=" not in item:
            raise ConfigError(f"unrecognized argument {item!r} "
                              "(overrides look like --params.delta=0.5)")
        key, value = item[2:].split("=", 1)
        out[key] = value
    return out


def _load_scenario(args, extras):
    raw = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        raw.update(parse_config_text(text, source=args.config))
    raw.update(_parse_extras(extras))
    raw.update(_flag_overrides(args))
    return build_scenario(raw)


def _write_sidecar(path: str, cfg: ScenarioConfig, extra: dict | None = None):
    meta = {"version": __version__, "config": cfg.resolved()}
    if extra:
        meta.update(extra)
    write_json(path, meta)


def _cmd_run(args, extras) -> int:
    cfg, sweep = _load_scenario(args, extras)
    if sweep is not None:
        raise ConfigError("config contains sweep keys; use the sweep subcommand")
    series = run_scenario(cfg)
    columns = {"t": series.t}
    for name in cfg.outputs:
        columns[name] = getattr(series, name)
    path = os.path.join(args.out, "run.csv")
    write_csv(path, list(columns), zip(*columns.values()))
    _write_sidecar(os.path.join(args.out, "run.meta.json"), cfg)
    print(path)
    return EXIT_OK


def _cmd_sweep(args, extras) -> int:
    cfg, sweep = _load_scenario(args, extras)
    if sweep is None:
        raise ConfigError("sweep requires sweep.axis and sweep.values in the config")
    rows = sweep_rows(sweep, jobs=args.jobs)
    path = os.path.join(args.out, "sweep.csv")
    write_csv(path, SWEEP_HEADER, rows)
    _write_sidecar(
        os.path.join(args.out, "sweep.meta.json"),
        cfg,
        {"sweep": {"axis": sweep.axis, "values": list(sweep.values)}},
    )
    print(path)
    return EXIT_OK


def _cmd_figure(args, extras) -> int:
    if args.figure_id not in FIGURE_IDS:
        print(f"unknown figure id {args.figure_id!r}; "
              f"valid: {', '.join(FIGURE_IDS)}", file=sys.stderr)
        return EXIT_UNKNOWN_FIGURE
    overrides = {}
    for name in ("t0", "t1", "rel_tol", "abs_tol", "samples", "nmax"):
        val = getattr(args, name)
        if val is not None:
            overrides[name] = val
    if extras:
        raise ConfigError(f"figure takes no --key=value overrides: {extras}")
    path = make_figure(args.figure_id, args.out, overrides, jobs=args.jobs)
    print(path)
    return EXIT_OK


def _float_list(text: str | None, default: float) -> list[float]:
    if text is None:
        return [default]
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad number in {text!r}") from exc
    if not vals:
        raise ConfigError(f"empty value list {text!r}")
    return vals


def _cat_oracle(alpha2, theta, delta, v, joint):
    n_max = choose_truncation(alpha2, 1e-14).n_max + 40
    w = cat_weights_exact(math.sqrt(alpha2), theta, np.arange(n_max + 1))
    if joint:
        return analytics.plz_norwa_sum(w, delta, v)
    return analytics.plz_fock_avg(w, delta, v)


# formula id -> (input column names, closed form, brute-force oracle)
_FORMULAS = {
    "eq9": (
        ("alpha2", "theta", "delta", "v"),
        lambda a, th, d, v: analytics.plz_cat_rwa(a, th, d, v),
        lambda a, th, d, v: _cat_oracle(a, th, d, v, joint=False),
    ),
    "eq10": (
        ("alpha2", "delta", "v"),
        lambda a, d, v: analytics.plz_ys(a, d, v),
        lambda a, d, v: _cat_oracle(a, math.pi / 2.0, d, v, joint=False),
    ),
    "eq11": (
        ("alpha2", "delta", "v"),
        lambda a, d, v: analytics.plz_even(a, d, v),
        lambda a, d, v: _cat_oracle(a, 0.0, d, v, joint=False),
    ),
    "eq12": (
        ("alpha2", "delta", "v"),
        lambda a, d, v: analytics.plz_odd(a, d, v),
        lambda a, d, v: _cat_oracle(a, math.pi, d, v, joint=False),
    ),
    "eq15": (
        ("alpha2", "theta", "delta", "v"),
        lambda a, th, d, v: analytics.plz_cat_norwa(a, th, d, v),
        lambda a, th, d, v: _cat_oracle(a, th, d, v, joint=True),
    ),
    "eq17": (
        ("omega", "T", "delta", "v"),
        lambda w, T, d, v: analytics.plz_thermal_rwa(w, T, d, v),
        lambda w, T, d, v: analytics.plz_thermal_sum(w, T, d, v, joint=False),
    ),
    # the literal printed thermal independent-crossing formula; its oracle is
    # the weighted sum, which it does not reproduce (the balanced variant in
    # analytics.plz_thermal_norwa does) -- the difference column makes that
    # visible rather than hiding it
    "eq18": (
        ("omega", "T", "delta", "v"),
        lambda w, T, d, v: analytics.plz_thermal_norwa_printed(w, T, d, v),
        lambda w, T, d, v: analytics.plz_thermal_sum(w, T, d, v, joint=True),
    ),
}

_ANALYTIC_DEFAULTS = {
    "alpha2": 1.0,
    "theta": math.pi / 2.0,
    "delta": 0.5,
    "v": 1.0,
    "omega": 10.0,
    "T": 10.0,
}


def _cmd_analytic(args, extras) -> int:
    if extras:
        raise ConfigError(f"analytic takes no --key=value overrides: {extras}")
    names, closed, oracle = _FORMULAS[args.formula]
    grids = [_float_list(getattr(args, n), _ANALYTIC_DEFAULTS[n]) for n in names]
    header = list(names) + ["value"]
    if args.oracle:
        header += ["oracle", "abs_diff"]
    print("\t".join(header))
    points = [[]]
    for g in grids:
        points = [p + [x] for p in points for x in g]
    for point in points:
        val = closed(*point)
        row = [fmt(x) for x in point] + [fmt(val)]
        if args.oracle:
            ora = oracle(*point)
            row += [fmt(ora), fmt(abs(val - ora))]
        print("\t".join(row))
    return EXIT_OK


_DISPATCH = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "analytic": _cmd_analytic,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args, extras = parser.parse_known_args(argv)
    try:
        return _DISPATCH[args.command](args, extras)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PropagationError, analytics.PcfConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
