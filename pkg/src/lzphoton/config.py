"""Scenario configuration: flat `key = value` files with dotted sections.

The same dotted keys are accepted as `--key=value` command-line overrides,
so every figure manifest can be reproduced from a single flat dictionary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

from .fockspace import (
    ThermalEnsemble,
    TruncationSpec,
    choose_truncation,
    joint_up,
    make_cat,
    make_fock,
    make_thermal_ensemble,
)
from .hamiltonians import LZParams, Model
from .propagator import IntegratorConfig

__all__ = ["ConfigError", "ScenarioConfig", "SweepSpec", "parse_config_text", "build_scenario"]

VALID_OUTPUTS = ("p_lz", "e_l", "q", "nbar", "norm")
SWEEP_AXES = ("alpha2", "theta", "delta", "omega", "T")


class ConfigError(ValueError):
    pass


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse `key = value` lines ('#' comments); returns a flat dict."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        out[key] = value
    return out


def _as_float(d, key, default):
    if key not in d:
        return default
    try:
        return float(d[key])
    except ValueError as exc:
        raise ConfigError(f"field {key}: not a number: {d[key]!r}") from exc


def _as_int(d, key, default):
    if key not in d:
        return default
    try:
        return int(d[key])
    except ValueError as exc:
        raise ConfigError(f"field {key}: not an integer: {d[key]!r}") from exc


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved description of one run."""

    model: str = "rwa"
    v: float = 1.0
    delta: float = 0.5
    omega: float = 10.0
    omega0: float | None = None
    initial_kind: str = "cat"  # cat | fock | thermal
    alpha2: float = 1.0
    theta: float = math.pi / 2.0
    fock_n: int = 0
    temperature: float = 1.0
    t0: float = -50.0
    t1: float = 50.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    samples: int = 2001
    max_step: float = math.inf
    nmax: int | None = None  # None means automatic
    tail_tol: float = 1e-12
    outputs: tuple = VALID_OUTPUTS

    def __post_init__(self):
        if self.model not in ("rwa", "full"):
            raise ConfigError(f"model must be rwa or full, got {self.model!r}")
        if self.initial_kind not in ("cat", "fock", "thermal"):
            raise ConfigError(f"unknown initial state kind {self.initial_kind!r}")
        bad = [o for o in self.outputs if o not in VALID_OUTPUTS]
        if bad:
            raise ConfigError(f"unknown outputs {bad}; valid: {VALID_OUTPUTS}")
        if self.initial_kind == "thermal" and "e_l" in self.outputs:
            # entropy of a mixed ensemble conflates classical and quantum
            # correlations; not offered
            object.__setattr__(
                self, "outputs", tuple(o for o in self.outputs if o != "e_l")
            )

    def params(self) -> LZParams:
        return LZParams(
            delta=self.delta,
            omega=self.omega,
            omega0=self.omega0,
            v=self.v,
            model=Model.RWA if self.model == "rwa" else Model.FULL,
        )

    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(
            t0=self.t0,
            t1=self.t1,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            sample_count=self.samples,
            max_step=self.max_step,
        )

    def truncation(self) -> TruncationSpec:
        if self.nmax is not None:
            return TruncationSpec(self.nmax, self.tail_tol)
        if self.initial_kind == "cat":
            return choose_truncation(self.alpha2, self.tail_tol)
        if self.initial_kind == "fock":
            return TruncationSpec(self.fock_n + 5, self.tail_tol)
        mean = 0.0 if self.temperature == 0 else 1.0 / math.expm1(self.omega / self.temperature)
        return choose_truncation(mean, self.tail_tol, kind="geometric")

    def initial_state(self):
        """JointState for pure kinds, ThermalEnsemble for thermal."""
        trunc = self.truncation()
        if self.initial_kind == "cat":
            return joint_up(make_cat(math.sqrt(self.alpha2), self.theta, trunc))
        if self.initial_kind == "fock":
            return joint_up(make_fock(self.fock_n, trunc))
        return make_thermal_ensemble(self.omega, self.temperature, trunc)

    def resolved(self) -> dict:
        d = asdict(self)
        d["outputs"] = list(self.outputs)
        d["nmax_resolved"] = self.truncation().n_max
        d["max_step"] = None if math.isinf(self.max_step) else self.max_step
        return d


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    base: ScenarioConfig

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}")
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ConfigError("sweep values must be nonempty")
        if not all(math.isfinite(v) for v in vals):
            raise ConfigError("sweep values must be finite")
        object.__setattr__(self, "values", vals)

    def point(self, value: float) -> ScenarioConfig:
        key = {"T": "temperature"}.get(self.axis, self.axis)
        d = {**asdict(self.base), key: value}
        d["outputs"] = tuple(self.base.outputs)
        return ScenarioConfig(**d)


_KEYMAP = {
    "model": "model",
    "params.v": "v",
    "params.delta": "delta",
    "params.omega": "omega",
    "params.omega0": "omega0",
    "initial.kind": "initial_kind",
    "initial.alpha2": "alpha2",
    "initial.theta": "theta",
    "initial.n": "fock_n",
    "initial.T": "temperature",
    "integrator.t0": "t0",
    "integrator.t1": "t1",
    "integrator.rel_tol": "rel_tol",
    "integrator.abs_tol": "abs_tol",
    "integrator.samples": "samples",
    "integrator.max_step": "max_step",
    "truncation.nmax": "nmax",
    "truncation.tail_tol": "tail_tol",
    "outputs": "outputs",
}

_FLOAT_FIELDS = {"v", "delta", "omega", "omega0", "alpha2", "theta", "temperature",
                 "t0", "t1", "rel_tol", "abs_tol", "max_step", "tail_tol"}
_INT_FIELDS = {"fock_n", "samples"}


def build_scenario(raw: dict[str, str]) -> tuple[ScenarioConfig, SweepSpec | None]:
    """Construct a scenario (and optional sweep) from a flat dotted-key dict."""
    kwargs = {}
    sweep_axis = None
    sweep_values = None
    for key, value in raw.items():
        if key == "sweep.axis":
            sweep_axis = value
            continue
        if key == "sweep.values":
            try:
                sweep_values = tuple(float(x) for x in value.split(",") if x.strip())
            except ValueError as exc:
                raise ConfigError(f"field sweep.values: bad number in {value!r}") from exc
            continue
        if key not in _KEYMAP:
            raise ConfigError(f"unknown config key {key!r}")
        name = _KEYMAP[key]
        if name == "outputs":
            kwargs[name] = tuple(x.strip() for x in value.split(",") if x.strip())
        elif name == "nmax":
            kwargs[name] = None if value == "auto" else _as_int({name: value}, name, None)
        elif name in _FLOAT_FIELDS:
            kwargs[name] = _as_float({name: value}, name, None)
        elif name in _INT_FIELDS:
            kwargs[name] = _as_int({name: value}, name, None)
        else:
            kwargs[name] = value
    cfg = ScenarioConfig(**kwargs)
    if (sweep_axis is None) != (sweep_values is None):
        raise ConfigError("sweep.axis and sweep.values must be given together")
    sweep = SweepSpec(sweep_axis, sweep_values, cfg) if sweep_axis else None
    return cfg, sweep
