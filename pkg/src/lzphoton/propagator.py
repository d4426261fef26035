"""Numerical time evolution under the time-dependent Schroedinger equation.

Adaptive embedded Runge-Kutta (DOP853) with tight local error control;
no renormalization is ever applied, the norm drift is measured and reported.

FULL-model states are propagated internally in the rotating frame of
N = a^dag a + sigma_z/2 (the coupling then oscillates at 2*omega instead of
omega * n_max, which keeps the step size usable), and sampled states are
rotated back to the lab frame before they are returned.  All observables are
invariant under that local unitary; the equivalence is covered by tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .fockspace import JointState, ThermalEnsemble
from .hamiltonians import LZParams, Model
from .observables import ObservableSeries, mandel_q, series_from_states

__all__ = [
    "IntegratorConfig",
    "Trajectory",
    "SectorTrajectory",
    "PropagationError",
    "evolve",
    "evolve_states",
    "evolve_sector_rwa",
    "evolve_thermal",
    "trajectory_series",
]

NORM_DRIFT_ABORT = 1e-6


class PropagationError(RuntimeError):
    """Integration failed (step-size underflow or excessive norm drift)."""


@dataclass(frozen=True)
class IntegratorConfig:
    t0: float = -50.0
    t1: float = 50.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    sample_count: int = 2001
    max_step: float = math.inf

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise ValueError("require t0 < t1")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")

    def grid(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.sample_count)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple
    norm_drift: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", tuple(self.states))


@dataclass(frozen=True)
class SectorTrajectory:
    n: int
    times: np.ndarray
    a: np.ndarray
    b: np.ndarray


def _make_rhs(params: LZParams, dim: int, n_members: int):
    """RHS of dy/dt = -i H(t) y for a batch of states, y flat complex."""
    v = params.v
    det = params.detuning
    g = -(params.delta / 2.0) * np.sqrt(np.arange(1, dim, dtype=float))  # len dim-1
    shape = (n_members, 2, dim)

    if params.model is Model.RWA:

        def rhs(t, y):
            psi = y.reshape(shape)
            up, down = psi[:, 0, :], psi[:, 1, :]
            bias = -(v * t - det) / 2.0
            hup = bias * up
            hdown = -bias * down
            hup[:, :-1] += g * down[:, 1:]
            hdown[:, 1:] += g * up[:, :-1]
            out = np.empty_like(psi)
            out[:, 0, :] = -1j * hup
            out[:, 1, :] = -1j * hdown
            return out.reshape(-1)

    else:
        omega = params.omega

        def rhs(t, y):
            psi = y.reshape(shape)
            up, down = psi[:, 0, :], psi[:, 1, :]
            bias = -(v * t) / 2.0
            hup = bias * up
            hdown = -bias * down
            # co-rotating coupling up_n <-> down_{n+1}
            hup[:, :-1] += g * down[:, 1:]
            hdown[:, 1:] += g * up[:, :-1]
            # counter-rotating coupling up_n <-> down_{n-1}, phase 2*omega*t
            ph = np.exp(2j * omega * t)
            hup[:, 1:] += (g * ph) * down[:, :-1]
            hdown[:, :-1] += (g * np.conj(ph)) * up[:, 1:]
            out = np.empty_like(psi)
            out[:, 0, :] = -1j * hup
            out[:, 1, :] = -1j * hdown
            return out.reshape(-1)

    return rhs


def _rotating_to_lab(params: LZParams, t: float, up: np.ndarray, down: np.ndarray):
    """Undo the N-frame rotation: psi_lab = exp(-i omega t N) psi_rot."""
    n = np.arange(len(up))
    ph_up = np.exp(-1j * params.omega * t * (n + 0.5))
    ph_down = np.exp(-1j * params.omega * t * (n - 0.5))
    return up * ph_up, down * ph_down


def _lab_to_rotating(params: LZParams, t: float, up: np.ndarray, down: np.ndarray):
    n = np.arange(len(up))
    ph_up = np.exp(1j * params.omega * t * (n + 0.5))
    ph_down = np.exp(1j * params.omega * t * (n - 0.5))
    return up * ph_up, down * ph_down


def _solve(rhs, y0, t_start, t_end, t_eval, cfg: IntegratorConfig):
    sol = solve_ivp(
        rhs,
        (t_start, t_end),
        y0,
        method="DOP853",
        t_eval=t_eval,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        dense_output=False,
    )
    if not sol.success:
        raise PropagationError(f"integrator failed: {sol.message}")
    return sol


def _batch_evolve(states, params: LZParams, cfg: IntegratorConfig, t_eval=None):
    """Evolve several initial JointStates under the same Hamiltonian.

    Returns (times, samples, drifts): samples has shape
    (n_samples, n_members, 2, dim) in the lab frame (or rotating frame for
    the RWA model, which is its native frame), drifts one per member.
    """
    dim = states[0].n_max + 1
    m = len(states)
    if t_eval is None:
        t_eval = cfg.grid()
    y0 = np.zeros((m, 2, dim), dtype=complex)
    for k, s in enumerate(states):
        if s.n_max + 1 != dim:
            raise ValueError("all ensemble members must share one truncation")
        up, down = s.up, s.down
        if params.model is Model.FULL:
            up, down = _lab_to_rotating(params, cfg.t0, up, down)
        y0[k, 0, :] = up
        y0[k, 1, :] = down
    rhs = _make_rhs(params, dim, m)
    sol = _solve(rhs, y0.reshape(-1), cfg.t0, cfg.t1, t_eval, cfg)
    samples = sol.y.T.reshape(len(t_eval), m, 2, dim).copy()
    if params.model is Model.FULL:
        for i, t in enumerate(t_eval):
            n = np.arange(dim)
            samples[i, :, 0, :] *= np.exp(-1j * params.omega * t * (n + 0.5))
            samples[i, :, 1, :] *= np.exp(-1j * params.omega * t * (n - 0.5))
    norms = np.sum(np.abs(samples) ** 2, axis=(2, 3))  # (n_samples, m)
    drifts = np.max(np.abs(1.0 - norms), axis=0)
    for k, d in enumerate(drifts):
        if d > NORM_DRIFT_ABORT:
            raise PropagationError(
                f"norm drift {d:.3e} for ensemble member {k} exceeds "
                f"{NORM_DRIFT_ABORT:.1e}; tighten tolerances"
            )
    return np.asarray(t_eval, dtype=float), samples, drifts


def evolve(initial: JointState, params: LZParams, cfg: IntegratorConfig) -> Trajectory:
    """Propagate a pure state across the sweep window and sample it uniformly."""
    nrm = initial.norm_sq()
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"initial state not normalized: |psi|^2 = {nrm!r}")
    times, samples, drifts = _batch_evolve([initial], params, cfg)
    states = tuple(
        JointState(samples[i, 0, 0, :], samples[i, 0, 1, :], float(times[i]))
        for i in range(len(times))
    )
    return Trajectory(times, states, float(drifts[0]))


def evolve_states(initial: JointState, params: LZParams, cfg: IntegratorConfig,
                  t_start: float, t_end: float) -> JointState:
    """Low-level single-shot propagation between arbitrary times (either
    direction); used for reversibility checks."""
    dim = initial.n_max + 1
    up, down = initial.up, initial.down
    if params.model is Model.FULL:
        up, down = _lab_to_rotating(params, t_start, up, down)
    y0 = np.concatenate([up, down])
    rhs = _make_rhs(params, dim, 1)
    sol = _solve(rhs, y0, t_start, t_end, np.array([t_end]), cfg)
    y = sol.y[:, -1]
    up, down = y[:dim], y[dim:]
    if params.model is Model.FULL:
        up, down = _rotating_to_lab(params, t_end, up, down)
    return JointState(up, down, t_end)


def evolve_sector_rwa(n: int, params: LZParams, cfg: IntegratorConfig) -> SectorTrajectory:
    """Integrate the closed RWA sector span{|up,n>, |down,n+1>}.

    Serves as the brute-force oracle for the parabolic-cylinder coefficients.
    """
    if params.model is not Model.RWA:
        raise ValueError("sector evolution is defined only for the RWA model")
    if n < 0:
        raise ValueError("sector index must be >= 0")
    v, det = params.v, params.detuning
    gn = -(params.delta / 2.0) * math.sqrt(n + 1.0)

    def rhs(t, y):
        bias = -(v * t - det) / 2.0
        return np.array([
            -1j * (bias * y[0] + gn * y[1]),
            -1j * (-bias * y[1] + gn * y[0]),
        ])

    t_eval = cfg.grid()
    sol = _solve(rhs, np.array([1.0 + 0j, 0.0 + 0j]), cfg.t0, cfg.t1, t_eval, cfg)
    a, b = sol.y[0], sol.y[1]
    drift = float(np.max(np.abs(1.0 - (np.abs(a) ** 2 + np.abs(b) ** 2))))
    if drift > NORM_DRIFT_ABORT:
        raise PropagationError(f"sector norm drift {drift:.3e} too large")
    return SectorTrajectory(n, t_eval, a, b)


def evolve_thermal(ens: ThermalEnsemble, params: LZParams, cfg: IntegratorConfig) -> ObservableSeries:
    """Weighted-average observables of a thermal diagonal ensemble.

    Each |up,n> member evolves independently (the dynamics is unitary and the
    initial state diagonal, so the sector ensemble is exact).  Only p_lz and
    the photon moments are meaningful for a mixed state; the entropy column
    is filled with NaN.
    """
    states = list(ens.sector_states)
    w = ens.weights
    times, samples, _ = _batch_evolve(states, params, cfg)
    nvec = np.arange(samples.shape[3])
    pop_down = np.sum(np.abs(samples[:, :, 1, :]) ** 2, axis=2)        # (T, m)
    pop = np.abs(samples[:, :, 0, :]) ** 2 + np.abs(samples[:, :, 1, :]) ** 2
    nbar_m = np.sum(nvec * pop, axis=2)
    n2_m = np.sum(nvec * nvec * pop, axis=2)
    norm_m = np.sum(pop, axis=2)
    plz = pop_down @ w
    nbar = nbar_m @ w
    n2 = n2_m @ w
    norm = norm_m @ w
    q = np.array([mandel_q(a, b) for a, b in zip(nbar, n2)])
    e_l = np.full_like(plz, math.nan)
    return ObservableSeries(times, plz, e_l, q, nbar, n2, norm)


def trajectory_series(traj: Trajectory) -> ObservableSeries:
    """Observable series of a pure-state trajectory."""
    return series_from_states(traj.times, traj.states)
